#include "fundgraph/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "fundgraph/errors.hpp"
#include "fundgraph/ols.hpp"
#include "fundgraph/util.hpp"

namespace fundgraph {

double scaled_funding(const FounderProfile& p) {
  if (p.industry_avg_round <= 0) {
    throw InvalidInput("industry_avg_round must be positive for " + p.founder_id);
  }
  return (p.current_round_raised + p.previous_rounds_raised) / p.industry_avg_round;
}

int affiliated_exits(const FounderProfile& p) {
  int sum = 0;
  for (int e : p.exits) sum += e;
  return sum;
}

BaselineWeights BaselineWeights::email_defaults() {
  return {{{"aggregate_funding", 4.0},
           {"interested_investors", 3.0},
           {"waitlist_responded", 2.0},
           {"avg_sentiment", 1.0}}};
}

BaselineWeights BaselineWeights::fri_defaults() {
  return {{{"affiliated_exits", 4.0}, {"aggregate_funding", 1.0}}};
}

Ranking Ranking::from_scores(const std::map<NodeId, double>& scores) {
  Ranking r;
  r.score = scores;
  r.order.reserve(scores.size());
  for (const auto& [id, s] : scores) r.order.push_back(id);
  std::stable_sort(r.order.begin(), r.order.end(), [&](const NodeId& a, const NodeId& b) {
    const double sa = scores.at(a), sb = scores.at(b);
    if (sa != sb) return sa > sb;
    return a < b;
  });
  return r;
}

namespace {

using MetricFn = std::function<double(const FounderProfile&)>;

MetricFn metric_by_name(const std::string& name) {
  if (name == "aggregate_funding") return [](const FounderProfile& p) { return scaled_funding(p); };
  if (name == "interested_investors") {
    return [](const FounderProfile& p) { return static_cast<double>(p.interested_investor_count); };
  }
  if (name == "waitlist_responded") {
    return [](const FounderProfile& p) { return static_cast<double>(p.waitlist_responded_count); };
  }
  if (name == "avg_sentiment") return [](const FounderProfile& p) { return p.avg_incoming_sentiment; };
  if (name == "affiliated_exits") {
    return [](const FounderProfile& p) { return static_cast<double>(affiliated_exits(p)); };
  }
  throw UnknownMetric("unknown baseline metric: " + name);
}

// Score for the baseline order: founder at 0-based rank r gets 1 - r/(N-1).
std::map<NodeId, double> rank_scaled_scores(const std::vector<NodeId>& order) {
  std::map<NodeId, double> scores;
  const std::size_t n = order.size();
  for (std::size_t r = 0; r < n; ++r) {
    scores[order[r]] = n == 1 ? 1.0 : 1.0 - static_cast<double>(r) / static_cast<double>(n - 1);
  }
  return scores;
}

}  // namespace

BaselineRanking baseline_rank(const std::vector<FounderProfile>& profiles,
                              const BaselineWeights& weights) {
  if (profiles.size() < 2) throw InvalidInput("baseline requires at least 2 profiles");
  const std::size_t n = profiles.size();

  std::map<NodeId, double> index_scores;
  for (const FounderProfile& p : profiles) {
    if (index_scores.count(p.founder_id)) {
      throw InvalidInput("duplicate founder id: " + p.founder_id);
    }
    index_scores[p.founder_id] = 0.0;
  }

  for (const auto& [metric_name, weight] : weights.entries) {
    if (weight <= 0) throw InvalidInput("baseline weights must be positive");
    const MetricFn metric = metric_by_name(metric_name);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = metric(profiles[i]);
    // 0-based competition rank: the count of strictly better founders, so
    // metric ties share an index instead of injecting id noise into scores.
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t better = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (values[j] > values[i]) ++better;
      }
      index_scores[profiles[i].founder_id] += static_cast<double>(better) * weight;
    }
  }

  // Compare scores on a quantized relative scale. Rescaled weight sets are
  // not exactly proportional in floating point, so real-arithmetic ties
  // (e.g. index combos 4 = 3 + 1) would otherwise break differently under a
  // positive rescaling of all weights. Scores within 2^-24 of the maximum
  // count as tied and fall through to the id tie-break.
  double max_score = 0.0;
  for (const auto& [id, s] : index_scores) max_score = std::max(max_score, s);
  const auto bucket = [&](const NodeId& id) -> long long {
    if (max_score <= 0.0) return 0;
    return std::llround(index_scores.at(id) / max_score * 16777216.0);
  };
  std::vector<NodeId> order;
  order.reserve(n);
  for (const auto& [id, s] : index_scores) order.push_back(id);
  std::stable_sort(order.begin(), order.end(), [&](const NodeId& a, const NodeId& b) {
    const long long ba = bucket(a), bb = bucket(b);
    if (ba != bb) return ba < bb;  // lower weighted sort index ranks first
    return a < b;
  });

  BaselineRanking result;
  result.index_scores = index_scores;
  result.ranking.order = order;
  result.ranking.score = rank_scaled_scores(order);
  return result;
}

BaselineRanking email_baseline(const std::vector<FounderProfile>& profiles) {
  return baseline_rank(profiles, BaselineWeights::email_defaults());
}

BaselineRanking fri_baseline(const std::vector<FounderProfile>& profiles) {
  return baseline_rank(profiles, BaselineWeights::fri_defaults());
}

Ranking random_rank(const std::vector<NodeId>& founders, std::uint64_t seed) {
  Rng rng(seed);
  std::map<NodeId, double> scores;
  // draw in the founders' given order so the stream is reproducible
  for (const NodeId& f : founders) scores[f] = rng.next_double();
  return Ranking::from_scores(scores);
}

double nfr_score(const MetricVector& m) {
  return (m.pagerank + m.betweenness + m.closeness) / 3.0;
}

Ranking nfr_rank(const std::vector<MetricVector>& founder_metrics) {
  std::map<NodeId, double> scores;
  for (const MetricVector& m : founder_metrics) scores[m.node_id] = nfr_score(m);
  return Ranking::from_scores(scores);
}

RegressionFit wfr_fit(const std::vector<std::vector<double>>& features,
                      const std::vector<double>& target,
                      const std::vector<std::string>& feature_names) {
  const OlsResult fit = ols_fit(features, target, feature_names);
  RegressionFit result;
  result.feature_names = feature_names;
  result.coefficients = fit.coefficients;
  result.intercept = fit.intercept;
  result.r_squared = fit.r_squared;
  return result;
}

Ranking wfr_rank(const RegressionFit& fit,
                 const std::vector<std::vector<double>>& features,
                 const std::vector<NodeId>& founders) {
  if (features.size() != founders.size()) {
    throw InvalidInput("wfr_rank: founders and feature rows must match");
  }
  std::map<NodeId, double> scores;
  for (std::size_t i = 0; i < founders.size(); ++i) {
    double s = fit.intercept;
    for (std::size_t j = 0; j < fit.coefficients.size(); ++j) {
      s += fit.coefficients[j] * features[i][j];
    }
    scores[founders[i]] = std::clamp(s, 0.0, 1.0);
  }
  return Ranking::from_scores(scores);
}

CommGraph build_funding_graph(const std::vector<Investment>& investments,
                              const std::vector<CoFounding>& cofoundings,
                              const std::vector<CoInvesting>& coinvestings) {
  CommGraph g;
  LabelFlags founder_flag;
  founder_flag.founder = true;
  LabelFlags investor_flag;
  investor_flag.investor = true;

  for (const Investment& inv : investments) {
    if (inv.founder_id.empty() || inv.investor_id.empty()) {
      throw InvalidInput("investment with empty id");
    }
    g.add_node(inv.founder_id, founder_flag);
    g.add_node(inv.investor_id, investor_flag);
    g.add_edge_weight(inv.founder_id, inv.investor_id, 1);
    g.add_edge_weight(inv.investor_id, inv.founder_id, 1);
  }
  for (const CoFounding& cf : cofoundings) {
    if (cf.founder_a.empty() || cf.founder_b.empty()) {
      throw InvalidInput("co-founding with empty id");
    }
    g.add_node(cf.founder_a, founder_flag);
    g.add_node(cf.founder_b, founder_flag);
    g.add_edge_weight(cf.founder_a, cf.founder_b, 1);
    g.add_edge_weight(cf.founder_b, cf.founder_a, 1);
  }
  for (const CoInvesting& ci : coinvestings) {
    if (ci.investor_a.empty() || ci.investor_b.empty()) {
      throw InvalidInput("co-investing with empty id");
    }
    g.add_node(ci.investor_a, investor_flag);
    g.add_node(ci.investor_b, investor_flag);
    g.add_edge_weight(ci.investor_a, ci.investor_b, 1);
    g.add_edge_weight(ci.investor_b, ci.investor_a, 1);
  }
  return g;
}

CommGraph overlay(const CommGraph& email_graph, const CommGraph& funding_graph,
                  const std::map<NodeId, NodeId>& identity_map) {
  std::map<NodeId, NodeId> reverse;
  for (const auto& [person, addr] : identity_map) {
    if (!reverse.emplace(addr, person).second) {
      throw IdentityConflict("two person ids map to address " + addr);
    }
  }
  const auto target = [&](const NodeId& funding_node) -> NodeId {
    auto it = identity_map.find(funding_node);
    return it == identity_map.end() ? funding_node : it->second;
  };

  CommGraph result = email_graph;
  for (const auto& [id, flags] : funding_graph.nodes()) result.add_node(target(id), flags);
  for (const auto& [src, targets] : funding_graph.out_edges()) {
    for (const auto& [dst, w] : targets) {
      if (target(src) == target(dst)) {
        throw IdentityConflict("mapping collapses edge " + src + " -> " + dst +
                               " into a self-loop");
      }
      result.add_edge_weight(target(src), target(dst), w);
    }
  }
  return result;
}

}  // namespace fundgraph
