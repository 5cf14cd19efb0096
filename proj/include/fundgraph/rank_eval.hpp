#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fundgraph/ranking.hpp"

namespace fundgraph {

// Score assigned to the baseline order: rank r (0-based, best first) maps to
// 1 - r/(N-1).
std::map<NodeId, double> baseline_scores(const Ranking& baseline);

// DCG with gain 2^(N - rg) - 1 (rg = 0-based baseline rank) and discount
// log2(position + 1), normalized by the baseline's own DCG. Gains are
// computed pre-scaled by 2^-N so large N cannot overflow. linear_gain
// substitutes N - rg for exploratory large-N runs.
double ndcg(const Ranking& candidate, const Ranking& baseline, bool linear_gain = false);

// Fraction of the candidate's top n that is also in the baseline's top n.
double precision_at(const Ranking& candidate, const Ranking& baseline, int n);

// Pairwise concordance over ordered pairs, divided by N(N-1).
double kendall_tau(const Ranking& candidate, const Ranking& baseline);

// 1 - 6 * sum(d^2) / (N (N^2 - 1)) over rank displacements.
double spearman_rho(const Ranking& candidate, const Ranking& baseline);

// Error between the candidate's own scores and the baseline's rank-scaled
// scores, per founder.
double rmse(const Ranking& candidate, const Ranking& baseline);
double mae(const Ranking& candidate, const Ranking& baseline);

enum class RankStat { Tau, Rho };

// Two-sided Monte Carlo permutation test of "no correlation with the
// baseline": the fraction of uniformly shuffled candidate orders whose
// |stat| >= |observed|, smoothed by +1/(trials + 1).
double perm_pvalue(RankStat stat, const Ranking& candidate, const Ranking& baseline,
                   int trials, std::uint64_t seed);

struct EvalReport {
  double ndcg = 0;
  std::map<int, double> precision_at;
  double kendall_tau = 0;
  double spearman_rho = 0;
  double rmse = 0;
  double mae = 0;
  double p_tau = 1;
  double p_rho = 1;
  bool linear_gain = false;
};

struct EvalOptions {
  std::vector<int> precision_cutoffs = {5, 10, 20};  // cutoffs above N are skipped
  int trials = 10000;
  std::uint64_t seed = 0;
  bool linear_gain = false;
};

EvalReport evaluate(const Ranking& candidate, const Ranking& baseline,
                    const EvalOptions& opts = {});

}  // namespace fundgraph
