#include "fundgraph/rank_eval.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fundgraph/errors.hpp"
#include "fundgraph/util.hpp"

namespace fundgraph {

namespace {

// Baseline rank (0-based) of each founder in the candidate's order.
std::vector<std::size_t> baseline_ranks_of_candidate(const Ranking& candidate,
                                                     const Ranking& baseline) {
  if (candidate.order.size() != baseline.order.size()) {
    throw InvalidInput("rankings cover different founder counts");
  }
  std::map<NodeId, std::size_t> rank_in_baseline;
  for (std::size_t r = 0; r < baseline.order.size(); ++r) {
    rank_in_baseline[baseline.order[r]] = r;
  }
  std::vector<std::size_t> rg;
  rg.reserve(candidate.order.size());
  for (const NodeId& f : candidate.order) {
    auto it = rank_in_baseline.find(f);
    if (it == rank_in_baseline.end()) {
      throw InvalidInput("rankings cover different founder sets: " + f);
    }
    rg.push_back(it->second);
  }
  return rg;
}

// Inversions via merge sort; the pair loop lives in the test oracle.
std::size_t count_inversions(std::vector<std::size_t>& a, std::vector<std::size_t>& tmp,
                             std::size_t lo, std::size_t hi) {
  if (hi - lo <= 1) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::size_t inv = count_inversions(a, tmp, lo, mid) + count_inversions(a, tmp, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (a[i] <= a[j]) {
      tmp[k++] = a[i++];
    } else {
      inv += mid - i;
      tmp[k++] = a[j++];
    }
  }
  while (i < mid) tmp[k++] = a[i++];
  while (j < hi) tmp[k++] = a[j++];
  std::copy(tmp.begin() + static_cast<long>(lo), tmp.begin() + static_cast<long>(hi),
            a.begin() + static_cast<long>(lo));
  return inv;
}

double tau_from_rg(const std::vector<std::size_t>& rg) {
  const std::size_t n = rg.size();
  if (n < 2) throw InvalidInput("kendall_tau requires N >= 2");
  std::vector<std::size_t> a(rg), tmp(n);
  const std::size_t inv = count_inversions(a, tmp, 0, n);
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  return 1.0 - 4.0 * static_cast<double>(inv) / pairs;
}

double rho_from_rg(const std::vector<std::size_t>& rg) {
  const std::size_t n = rg.size();
  if (n < 2) throw InvalidInput("spearman_rho requires N >= 2");
  double sum_d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(rg[i]) - static_cast<double>(i);
    sum_d2 += d * d;
  }
  const double nn = static_cast<double>(n);
  return 1.0 - 6.0 * sum_d2 / (nn * (nn * nn - 1.0));
}

}  // namespace

std::map<NodeId, double> baseline_scores(const Ranking& baseline) {
  const std::size_t n = baseline.order.size();
  if (n < 2) throw InvalidInput("baseline_scores requires N >= 2");
  std::map<NodeId, double> scores;
  for (std::size_t r = 0; r < n; ++r) {
    scores[baseline.order[r]] = 1.0 - static_cast<double>(r) / static_cast<double>(n - 1);
  }
  return scores;
}

double ndcg(const Ranking& candidate, const Ranking& baseline, bool linear_gain) {
  const std::vector<std::size_t> rg = baseline_ranks_of_candidate(candidate, baseline);
  const std::size_t n = rg.size();
  if (n == 0) throw InvalidInput("ndcg on empty ranking");

  // gain(rg) scaled by 2^-N: 2^(N-rg) - 1 becomes 2^-rg - 2^-N, which keeps
  // the ratio intact and never overflows
  const auto gain = [&](std::size_t r) -> long double {
    if (linear_gain) return static_cast<long double>(n - r);
    return std::exp2l(-static_cast<long double>(r)) - std::exp2l(-static_cast<long double>(n));
  };
  long double dcg_x = 0.0L;
  long double dcg_b = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double discount = std::log2l(static_cast<long double>(i) + 2.0L);
    dcg_x += gain(rg[i]) / discount;
    dcg_b += gain(i) / discount;  // the baseline holds founder of rank i at position i
  }
  return static_cast<double>(dcg_x / dcg_b);
}

double precision_at(const Ranking& candidate, const Ranking& baseline, int n) {
  if (n < 1 || static_cast<std::size_t>(n) > candidate.order.size()) {
    throw InvalidInput("precision cutoff out of range: " + std::to_string(n));
  }
  baseline_ranks_of_candidate(candidate, baseline);  // founder-set check
  std::set<NodeId> top_b(baseline.order.begin(), baseline.order.begin() + n);
  std::size_t hits = 0;
  for (int i = 0; i < n; ++i) {
    if (top_b.count(candidate.order[static_cast<std::size_t>(i)])) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n);
}

double kendall_tau(const Ranking& candidate, const Ranking& baseline) {
  return tau_from_rg(baseline_ranks_of_candidate(candidate, baseline));
}

double spearman_rho(const Ranking& candidate, const Ranking& baseline) {
  return rho_from_rg(baseline_ranks_of_candidate(candidate, baseline));
}

namespace {

std::pair<double, double> score_errors(const Ranking& candidate, const Ranking& baseline) {
  baseline_ranks_of_candidate(candidate, baseline);  // founder-set check
  const std::map<NodeId, double> base_scores = baseline_scores(baseline);
  double sum_sq = 0.0, sum_abs = 0.0;
  for (const auto& [f, bs] : base_scores) {
    auto it = candidate.score.find(f);
    if (it == candidate.score.end()) {
      throw InvalidInput("candidate is missing a score for " + f);
    }
    const double d = it->second - bs;
    sum_sq += d * d;
    sum_abs += std::fabs(d);
  }
  const double n = static_cast<double>(base_scores.size());
  return {std::sqrt(sum_sq / n), sum_abs / n};
}

}  // namespace

double rmse(const Ranking& candidate, const Ranking& baseline) {
  return score_errors(candidate, baseline).first;
}

double mae(const Ranking& candidate, const Ranking& baseline) {
  return score_errors(candidate, baseline).second;
}

double perm_pvalue(RankStat stat, const Ranking& candidate, const Ranking& baseline,
                   int trials, std::uint64_t seed) {
  if (trials < 100) throw InvalidInput("perm_pvalue requires at least 100 trials");
  const std::vector<std::size_t> rg = baseline_ranks_of_candidate(candidate, baseline);
  const auto eval = stat == RankStat::Tau ? tau_from_rg : rho_from_rg;
  const double observed = std::fabs(eval(rg));

  Rng rng(seed);
  std::vector<std::size_t> shuffled(rg.size());
  for (std::size_t i = 0; i < shuffled.size(); ++i) shuffled[i] = i;
  int at_least = 0;
  for (int t = 0; t < trials; ++t) {
    rng.shuffle(shuffled);
    if (std::fabs(eval(shuffled)) >= observed) ++at_least;
  }
  return (1.0 + static_cast<double>(at_least)) / (static_cast<double>(trials) + 1.0);
}

EvalReport evaluate(const Ranking& candidate, const Ranking& baseline,
                    const EvalOptions& opts) {
  EvalReport report;
  report.linear_gain = opts.linear_gain;
  report.ndcg = ndcg(candidate, baseline, opts.linear_gain);
  for (int n : opts.precision_cutoffs) {
    if (n >= 1 && static_cast<std::size_t>(n) <= candidate.order.size()) {
      report.precision_at[n] = precision_at(candidate, baseline, n);
    }
  }
  report.kendall_tau = kendall_tau(candidate, baseline);
  report.spearman_rho = spearman_rho(candidate, baseline);
  const auto errors = score_errors(candidate, baseline);
  report.rmse = errors.first;
  report.mae = errors.second;
  report.p_tau = perm_pvalue(RankStat::Tau, candidate, baseline, opts.trials, opts.seed);
  report.p_rho = perm_pvalue(RankStat::Rho, candidate, baseline, opts.trials, opts.seed + 1);
  return report;
}

}  // namespace fundgraph
