#include "fundgraph/synth.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "fundgraph/centrality.hpp"
#include "fundgraph/errors.hpp"
#include "fundgraph/util.hpp"

namespace fundgraph {

using nlohmann::json;

namespace {

std::string padded(const char* prefix, int n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%04d", prefix, n);
  return buf;
}

const std::vector<std::string>& first_names() {
  static const std::vector<std::string> v = {
      "Ada",  "Anna",  "Boris", "Chen",  "Dana", "Elif", "Femi",  "Grace", "Hiro", "Ines",
      "Jen",  "Karim", "Lena",  "Mara",  "Nils", "Omar", "Priya", "Quinn", "Rosa", "Sam"};
  return v;
}

const std::vector<std::string>& last_names() {
  static const std::vector<std::string> v = {
      "Adler",  "Bauer", "Costa",  "Diaz",   "Egan",  "Fischer", "Garcia", "Hwang",
      "Iqbal",  "Jones", "Kim",    "Lopez",  "Meyer", "Novak",   "Okafor", "Park",
      "Quiros", "Rossi", "Silva",  "Tanaka"};
  return v;
}

const std::vector<std::string>& city_pool() {
  static const std::vector<std::string> v = {
      "San Francisco", "New York", "Boston",  "London",  "Berlin", "Toronto",
      "Austin",        "Seattle",  "Chicago", "Paris",   "Tokyo",  "Singapore"};
  return v;
}

const std::vector<std::string>& topic_pool() {
  static const std::vector<std::string> v = {
      "ai",      "saas",     "fintech", "climate",  "healthcare",
      "crypto",  "devtools", "consumer", "mobility", "biotech"};
  return v;
}

template <typename T>
std::set<T> random_subset(Rng& rng, const std::vector<T>& pool, std::size_t lo,
                          std::size_t hi) {
  const std::size_t count = lo + static_cast<std::size_t>(rng.next_below(hi - lo + 1));
  std::set<T> out;
  while (out.size() < std::min(count, pool.size())) {
    out.insert(pool[rng.next_below(pool.size())]);
  }
  return out;
}

}  // namespace

SynthSpec parse_synth_spec(const std::string& json_text) {
  json j = json::parse(json_text);
  SynthSpec s;
  if (j.contains("founders")) s.founders = j.at("founders").get<int>();
  if (j.contains("investors")) s.investors = j.at("investors").get<int>();
  if (j.contains("persons")) s.persons = j.at("persons").get<int>();
  if (j.contains("edge_model")) {
    const std::string m = j.at("edge_model").get<std::string>();
    if (m == "preferential-attachment") {
      s.edge_model = EdgeModel::PreferentialAttachment;
    } else if (m == "erdos-renyi") {
      s.edge_model = EdgeModel::ErdosRenyi;
    } else {
      throw InvalidInput("unknown edge model: " + m);
    }
  }
  if (j.contains("pa_out_edges")) s.pa_out_edges = j.at("pa_out_edges").get<int>();
  if (j.contains("er_edge_prob")) s.er_edge_prob = j.at("er_edge_prob").get<double>();
  if (j.contains("max_edge_weight")) s.max_edge_weight = j.at("max_edge_weight").get<int>();
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("planted_communities")) {
    s.planted_communities = j.at("planted_communities").get<int>();
  }
  if (j.contains("planted_baseline")) {
    s.planted_baseline.clear();
    for (const auto& [metric, coef] : j.at("planted_baseline").items()) {
      s.planted_baseline.emplace_back(metric, coef.get<double>());
    }
  }
  if (j.contains("planted_intercept")) {
    s.planted_intercept = j.at("planted_intercept").get<double>();
  }
  if (j.contains("catalog_firms")) s.catalog_firms = j.at("catalog_firms").get<int>();
  if (j.contains("catalog_companies")) {
    s.catalog_companies = j.at("catalog_companies").get<int>();
  }
  if (j.contains("timeline_founders")) {
    s.timeline_founders = j.at("timeline_founders").get<int>();
  }
  if (j.contains("bulk_noise")) s.bulk_noise = j.at("bulk_noise").get<int>();
  return s;
}

std::string synth_spec_to_json(const SynthSpec& s) {
  json j;
  j["founders"] = s.founders;
  j["investors"] = s.investors;
  j["persons"] = s.persons;
  j["edge_model"] = s.edge_model == EdgeModel::PreferentialAttachment
                        ? "preferential-attachment"
                        : "erdos-renyi";
  j["pa_out_edges"] = s.pa_out_edges;
  j["er_edge_prob"] = s.er_edge_prob;
  j["max_edge_weight"] = s.max_edge_weight;
  j["seed"] = s.seed;
  j["planted_communities"] = s.planted_communities;
  json planted = json::object();
  for (const auto& [metric, coef] : s.planted_baseline) planted[metric] = coef;
  j["planted_baseline"] = planted;
  j["planted_intercept"] = s.planted_intercept;
  j["catalog_firms"] = s.catalog_firms;
  j["catalog_companies"] = s.catalog_companies;
  j["timeline_founders"] = s.timeline_founders;
  j["bulk_noise"] = s.bulk_noise;
  return j.dump(2);
}

namespace {

void validate_spec(const SynthSpec& s) {
  if (s.founders < 1 || s.investors < 0 || s.persons < 0) {
    throw InvalidInput("synth spec: node counts must be positive");
  }
  const int total = s.founders + s.investors + s.persons;
  if (s.planted_communities < 1 || total < 2 * s.planted_communities) {
    throw InvalidInput("synth spec: each planted community needs at least 2 nodes");
  }
  if (s.er_edge_prob < 0.0 || s.er_edge_prob > 1.0) {
    throw InvalidInput("synth spec: er_edge_prob must be in [0, 1]");
  }
  if (s.pa_out_edges < 1 || s.max_edge_weight < 1) {
    throw InvalidInput("synth spec: pa_out_edges and max_edge_weight must be positive");
  }
}

struct NodePlan {
  std::vector<NodeId> ids;      // index-aligned with blocks
  std::vector<int> block;       // planted community per node
  std::vector<LabelFlags> flags;
};

NodePlan plan_nodes(const SynthSpec& spec, Rng& rng) {
  NodePlan plan;
  for (int i = 0; i < spec.founders; ++i) {
    LabelFlags f;
    f.founder = true;
    plan.ids.push_back(padded("f", i) + std::string("@synth.test"));
    plan.flags.push_back(f);
  }
  for (int i = 0; i < spec.investors; ++i) {
    LabelFlags f;
    f.investor = true;
    plan.ids.push_back(padded("i", i) + std::string("@synth.test"));
    plan.flags.push_back(f);
  }
  for (int i = 0; i < spec.persons; ++i) {
    plan.ids.push_back(padded("p", i) + std::string("@synth.test"));
    plan.flags.push_back(LabelFlags{});
  }
  // stripe kinds across blocks deterministically
  std::vector<std::size_t> order(plan.ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  std::vector<NodeId> ids;
  std::vector<LabelFlags> flags;
  for (std::size_t idx : order) {
    ids.push_back(plan.ids[idx]);
    flags.push_back(plan.flags[idx]);
  }
  plan.ids = std::move(ids);
  plan.flags = std::move(flags);
  plan.block.resize(plan.ids.size());
  const std::size_t n = plan.ids.size();
  const std::size_t k = static_cast<std::size_t>(spec.planted_communities);
  for (std::size_t i = 0; i < n; ++i) {
    plan.block[i] = static_cast<int>(i * k / n);
  }
  return plan;
}

CommGraph build_graph(const SynthSpec& spec, const NodePlan& plan, Rng& rng) {
  CommGraph g;
  for (std::size_t i = 0; i < plan.ids.size(); ++i) g.add_node(plan.ids[i], plan.flags[i]);

  std::map<int, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < plan.ids.size(); ++i) {
    blocks[plan.block[i]].push_back(i);
  }
  const auto weight = [&] {
    return 1 + static_cast<Weight>(rng.next_below(static_cast<std::uint64_t>(spec.max_edge_weight)));
  };
  const auto orient = [&](std::size_t a, std::size_t b) {
    if (rng.next_below(2) == 0) std::swap(a, b);
    g.add_edge_weight(plan.ids[a], plan.ids[b], weight());
  };

  for (const auto& [block_id, members] : blocks) {
    const std::size_t m = members.size();
    if (spec.edge_model == EdgeModel::PreferentialAttachment) {
      std::vector<std::size_t> degree(m, 0);
      for (std::size_t j = 1; j < m; ++j) {
        const std::size_t attach = std::min<std::size_t>(j, static_cast<std::size_t>(spec.pa_out_edges));
        std::set<std::size_t> chosen;
        while (chosen.size() < attach) {
          // select proportional to degree + 1
          std::uint64_t total = 0;
          for (std::size_t t = 0; t < j; ++t) total += degree[t] + 1;
          std::uint64_t pick = rng.next_below(total);
          std::size_t t = 0;
          for (; t < j; ++t) {
            const std::uint64_t mass = degree[t] + 1;
            if (pick < mass) break;
            pick -= mass;
          }
          chosen.insert(t);
        }
        for (std::size_t t : chosen) {
          orient(members[j], members[t]);
          ++degree[j];
          ++degree[t];
        }
      }
    } else {
      // random recursive tree keeps the block connected, then extra edges
      for (std::size_t j = 1; j < m; ++j) {
        const std::size_t parent = static_cast<std::size_t>(rng.next_below(j));
        orient(members[j], members[parent]);
      }
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
          if (a == b) continue;
          if (rng.next_double() < spec.er_edge_prob) {
            g.add_edge_weight(plan.ids[members[a]], plan.ids[members[b]], weight());
          }
        }
      }
    }
  }
  return g;
}

std::vector<EmailEvent> build_events(const CommGraph& g, int bulk_noise, Rng& rng) {
  std::vector<EmailEvent> events;
  std::int64_t ts = 1600000000;
  int counter = 0;
  for (const auto& [src, targets] : g.out_edges()) {
    for (const auto& [dst, w] : targets) {
      for (Weight i = 0; i < w; ++i) {
        EmailEvent e;
        e.message_id = "m" + std::to_string(counter);
        e.thread_id = "t" + std::to_string(counter / 3);
        e.timestamp = ts;
        e.from_addr = src;
        e.recipients = {dst};
        e.body_text = "following up on our conversation";
        if (rng.next_below(4) == 0) {
          e.sentiment = rng.next_double() * 2.0 - 1.0;
        }
        events.push_back(std::move(e));
        ++ts;
        ++counter;
      }
    }
  }
  // interleave bulk messages; ingestion must skip all of them
  const std::vector<NodeId> nodes = [&] {
    std::vector<NodeId> v;
    for (const auto& [id, f] : g.nodes()) v.push_back(id);
    return v;
  }();
  for (int b = 0; b < bulk_noise && !nodes.empty(); ++b) {
    EmailEvent e;
    e.message_id = "bulk" + std::to_string(b);
    e.timestamp = ts++;
    e.from_addr = "news@list.example.com";
    e.recipients = {nodes[rng.next_below(nodes.size())]};
    e.body_text = "monthly digest - click unsubscribe to opt out";
    e.headers = {"list-unsubscribe"};
    const std::size_t pos = rng.next_below(events.size() + 1);
    events.insert(events.begin() + static_cast<long>(pos), std::move(e));
  }
  // keep timestamps ascending after interleaving
  std::int64_t t2 = 1600000000;
  for (EmailEvent& e : events) e.timestamp = t2++;
  return events;
}

std::vector<FounderProfile> build_profiles(const std::vector<NodeId>& founder_ids, Rng& rng) {
  std::vector<FounderProfile> profiles;
  for (const NodeId& id : founder_ids) {
    FounderProfile p;
    p.founder_id = id;
    p.current_round_raised = static_cast<double>(rng.next_below(8000)) * 1000.0;
    p.previous_rounds_raised =
        rng.next_below(3) == 0 ? static_cast<double>(rng.next_below(20000)) * 1000.0 : 0.0;
    p.industry_avg_round = 1.0e6 + static_cast<double>(rng.next_below(5)) * 5.0e5;
    p.interested_investor_count = static_cast<int>(rng.next_below(25));
    p.waitlist_responded_count = static_cast<int>(rng.next_below(12));
    p.avg_incoming_sentiment = rng.next_double() * 2.0 - 1.0;
    for (int& e : p.exits) e = rng.next_below(8) == 0 ? static_cast<int>(rng.next_below(3)) : 0;
    profiles.push_back(std::move(p));
  }
  return profiles;
}

Catalog build_catalog(const SynthSpec& spec, Rng& rng) {
  Catalog catalog;
  const std::vector<std::string>& industries = industry_universe();
  const std::vector<FundingStage> stage_pool = {
      FundingStage::Accelerator, FundingStage::Angel,   FundingStage::PreSeed,
      FundingStage::Seed,        FundingStage::SeriesA, FundingStage::SeriesB,
      FundingStage::Venture};

  for (int c = 0; c < spec.catalog_companies; ++c) {
    CompanyRecord company;
    company.company_id = padded("c", c);
    company.name = "Company " + std::to_string(c);
    company.industries = random_subset(rng, industries, 1, 3);
    company.city = city_pool()[rng.next_below(city_pool().size())];
    catalog.companies[company.company_id] = company;
  }

  int investor_seq = 0;
  for (int f = 0; f < spec.catalog_firms; ++f) {
    FirmRecord firm;
    firm.firm_id = padded("F", f);
    firm.name = last_names()[rng.next_below(last_names().size())] + " " +
                (rng.next_below(2) == 0 ? "Ventures" : "Capital") + " " + std::to_string(f);
    firm.hq_city = city_pool()[rng.next_below(city_pool().size())];
    for (const std::string& city : random_subset(rng, city_pool(), 0, 2)) {
      if (city != firm.hq_city) firm.office_cities.push_back(city);
    }
    std::vector<FundingStage> rounds;
    const std::size_t round_count = 2 + rng.next_below(6);
    for (std::size_t r = 0; r < round_count; ++r) {
      rounds.push_back(stage_pool[rng.next_below(stage_pool.size())]);
    }
    firm.stages = infer_stages(rounds);
    if (firm.stages.empty()) firm.stages.insert(FundingStage::Seed);
    firm.industries = random_subset(rng, industries, 1, 4);
    firm.conversation_count = static_cast<int>(rng.next_below(40));
    firm.us_only_eligible = rng.next_below(3) != 0;
    firm.investments_last_year = static_cast<int>(rng.next_below(15));

    const std::size_t inv_count = 1 + rng.next_below(4);
    for (std::size_t i = 0; i < inv_count; ++i) {
      InvestorRecord inv;
      inv.investor_id = padded("I", investor_seq++);
      inv.first_name = first_names()[rng.next_below(first_names().size())];
      inv.last_name = last_names()[rng.next_below(last_names().size())];
      inv.firm_id = firm.firm_id;
      inv.featured = rng.next_below(5) == 0;
      inv.verified = rng.next_below(3) == 0;
      inv.topics = random_subset(rng, topic_pool(), 0, 3);
      inv.industries = random_subset(rng, industries, 0, 3);
      if (inv.featured) ++firm.featured_investor_count;
      if (inv.verified) ++firm.verified_investor_count;
      catalog.topic_universe.insert(inv.topics.begin(), inv.topics.end());
      firm.investors.push_back(std::move(inv));
    }

    const std::size_t invest_count = 1 + rng.next_below(6);
    std::set<std::string> invested;
    while (invested.size() < std::min<std::size_t>(invest_count, catalog.companies.size())) {
      invested.insert(padded("c", static_cast<int>(rng.next_below(
                                      static_cast<std::uint64_t>(spec.catalog_companies)))));
    }
    for (const std::string& company_id : invested) {
      firm.investments.push_back(company_id);
      catalog.companies[company_id].investor_firm_ids.push_back(firm.firm_id);
    }
    catalog.firms.push_back(std::move(firm));
  }
  // every topic queryable even if no investor drew it
  catalog.topic_universe.insert(topic_pool().begin(), topic_pool().end());
  return catalog;
}

std::vector<RaiseTimeline> build_timelines(const std::vector<NodeId>& founder_ids,
                                           int how_many, Rng& rng) {
  std::vector<RaiseTimeline> timelines;
  for (int i = 0; i < how_many && i < static_cast<int>(founder_ids.size()); ++i) {
    RaiseTimeline t;
    t.founder_id = founder_ids[static_cast<std::size_t>(i)];
    t.wishlist_first_add = 1500000000 + static_cast<std::int64_t>(rng.next_below(10000000));
    const std::int64_t days = 30 + static_cast<std::int64_t>(rng.next_below(170));
    t.last_status_update = t.wishlist_first_add + days * 86400;
    const int weeks = static_cast<int>(days / 7) + 1;

    std::vector<double> shares(static_cast<std::size_t>(weeks));
    double total = 0.0;
    for (double& s : shares) {
      s = 0.05 + rng.next_double();
      total += s;
    }
    for (int w = 0; w < weeks; ++w) {
      t.weekly_email_share.emplace_back(w, shares[static_cast<std::size_t>(w)] / total);
    }
    if (rng.next_below(5) != 0) {  // 1 in 5 raises has no eventual investors
      std::vector<double> raw(static_cast<std::size_t>(weeks));
      double acc = 0.0;
      for (double& r : raw) {
        acc += rng.next_double();
        r = acc;
      }
      for (int w = 0; w < weeks; ++w) {
        t.committed_by_week.emplace_back(w, raw[static_cast<std::size_t>(w)] / acc);
      }
    }
    validate_timeline(t);
    timelines.push_back(std::move(t));
  }
  return timelines;
}

}  // namespace

SynthWorld generate(const SynthSpec& spec) {
  validate_spec(spec);
  Rng rng(spec.seed);

  SynthWorld world;
  const NodePlan plan = plan_nodes(spec, rng);
  world.graph = build_graph(spec, plan, rng);
  for (std::size_t i = 0; i < plan.ids.size(); ++i) {
    world.truth.planted_community[plan.ids[i]] = plan.block[i];
  }

  // planted linear baseline over the scaled metrics of founder nodes
  const std::vector<NodeMetrics> metrics = compute_metrics(world.graph);
  std::map<NodeId, MetricVector> scaled;
  for (const NodeMetrics& m : metrics) scaled[m.node_id] = m.scaled();
  const std::vector<NodeId> founder_ids = world.graph.nodes_with_label(NodeLabel::Founder);
  world.truth.planted_coefficients = spec.planted_baseline;
  world.truth.planted_intercept = spec.planted_intercept;
  for (const NodeId& f : founder_ids) {
    const MetricVector& m = scaled.at(f);
    double score = spec.planted_intercept;
    for (const auto& [metric, coef] : spec.planted_baseline) {
      if (metric == "pagerank") {
        score += coef * m.pagerank;
      } else if (metric == "betweenness") {
        score += coef * m.betweenness;
      } else if (metric == "closeness") {
        score += coef * m.closeness;
      } else {
        throw UnknownMetric("planted baseline metric: " + metric);
      }
    }
    world.truth.planted_scores[f] = score;
  }
  world.planted_ranking = Ranking::from_scores(world.truth.planted_scores);
  // a baseline ranking carries rank-scaled scores
  const std::size_t n = world.planted_ranking.order.size();
  for (std::size_t r = 0; r < n; ++r) {
    world.planted_ranking.score[world.planted_ranking.order[r]] =
        n <= 1 ? 1.0 : 1.0 - static_cast<double>(r) / static_cast<double>(n - 1);
  }

  world.events = build_events(world.graph, spec.bulk_noise, rng);
  world.profiles = build_profiles(founder_ids, rng);
  world.catalog = build_catalog(spec, rng);
  world.timelines = build_timelines(founder_ids, spec.timeline_founders, rng);
  return world;
}

}  // namespace fundgraph
