#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fundgraph/centrality.hpp"
#include "fundgraph/graph.hpp"

namespace fundgraph {

struct FounderProfile {
  NodeId founder_id;
  double current_round_raised = 0;
  double previous_rounds_raised = 0;
  double industry_avg_round = 1;  // strictly positive
  int interested_investor_count = 0;   // investors with >= 2 emails in the window
  int waitlist_responded_count = 0;
  double avg_incoming_sentiment = 0;  // in [-1, 1]
  // job_ipo, job_acq, exec_ipo, exec_acq, adv_ipo, adv_acq
  std::array<int, 6> exits{};
};

// (current + previous rounds) relative to the industry's average round size
double scaled_funding(const FounderProfile& p);
int affiliated_exits(const FounderProfile& p);

struct BaselineWeights {
  std::vector<std::pair<std::string, double>> entries;  // (metric name, weight > 0)

  static BaselineWeights email_defaults();  // funding 4, interested 3, waitlist 2, sentiment 1
  static BaselineWeights fri_defaults();    // affiliated exits 4, funding 1
};

// Total order plus a [0, 1] score per founder. The list is sorted by score
// descending; ties everywhere break by founder id ascending.
struct Ranking {
  std::vector<NodeId> order;  // best first
  std::map<NodeId, double> score;

  static Ranking from_scores(const std::map<NodeId, double>& scores);
  std::size_t size() const { return order.size(); }
};

struct BaselineRanking {
  Ranking ranking;
  // weighted sort-index score per founder; lower is better
  std::map<NodeId, double> index_scores;
};

// Weighted sum of per-metric sort indexes (0-based competition rank, larger
// metric values rank better), sorted ascending. Throws UnknownMetric.
BaselineRanking baseline_rank(const std::vector<FounderProfile>& profiles,
                              const BaselineWeights& weights);
BaselineRanking email_baseline(const std::vector<FounderProfile>& profiles);
BaselineRanking fri_baseline(const std::vector<FounderProfile>& profiles);

Ranking random_rank(const std::vector<NodeId>& founders, std::uint64_t seed);

// Plain average of the three unit-scaled graph metrics.
double nfr_score(const MetricVector& m);
Ranking nfr_rank(const std::vector<MetricVector>& founder_metrics);

struct RegressionFit {
  std::vector<std::string> feature_names;
  std::vector<double> coefficients;
  double intercept = 0;
  double r_squared = 0;
};

// Least squares of the target against the feature matrix (intercept added).
// Throws SingularDesign naming the offending column.
RegressionFit wfr_fit(const std::vector<std::vector<double>>& features,
                      const std::vector<double>& target,
                      const std::vector<std::string>& feature_names = {});

// Fitted scores clamped into [0, 1] to form a Ranking.
Ranking wfr_rank(const RegressionFit& fit,
                 const std::vector<std::vector<double>>& features,
                 const std::vector<NodeId>& founders);

struct Investment {
  NodeId founder_id;
  NodeId investor_id;
};

struct CoFounding {
  NodeId founder_a;
  NodeId founder_b;
};

struct CoInvesting {
  NodeId investor_a;
  NodeId investor_b;
};

// Each investment adds one edge founder->investor and one investor->founder;
// co-founding (and optional co-investing) pairs add both directions too.
CommGraph build_funding_graph(const std::vector<Investment>& investments,
                              const std::vector<CoFounding>& cofoundings,
                              const std::vector<CoInvesting>& coinvestings = {});

// Merges funding-graph nodes into their mapped email nodes (edges redirected,
// weights summed); unmapped nodes join as-is. identity_map must be injective.
CommGraph overlay(const CommGraph& email_graph, const CommGraph& funding_graph,
                  const std::map<NodeId, NodeId>& identity_map);

}  // namespace fundgraph
