#include "fundgraph/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "fundgraph/errors.hpp"
#include "fundgraph/util.hpp"

namespace fundgraph {

namespace {

void require_nonempty(const CommGraph& g) {
  if (g.node_count() == 0) throw InvalidInput("metric on empty graph");
}

std::map<NodeId, double> to_map(const IndexedView& v, const std::vector<double>& values) {
  std::map<NodeId, double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out[v.ids[i]] = values[i];
  return out;
}

}  // namespace

std::map<NodeId, double> pagerank(const CommGraph& g, const PageRankOptions& opts) {
  require_nonempty(g);
  if (opts.damping <= 0.0 || opts.damping >= 1.0) {
    throw InvalidInput("damping must be in (0, 1)");
  }
  if (opts.tolerance <= 0.0) throw InvalidInput("tolerance must be positive");

  const IndexedView v = g.indexed();
  const std::size_t n = v.size();
  const double d = opts.damping;

  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    double dangling = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (v.out[i].empty()) dangling += x[i];
    }
    const double base = (1.0 - d) / static_cast<double>(n) +
                        d * dangling / static_cast<double>(n);
    std::fill(next.begin(), next.end(), base);
    for (std::size_t i = 0; i < n; ++i) {
      if (v.out[i].empty()) continue;
      const double share = d * x[i] / static_cast<double>(v.out[i].size());
      for (std::size_t j : v.out[i]) next[j] += share;
    }
    // guard against drift so the sum-to-1 contract holds exactly-ish
    double sum = 0.0;
    for (double s : next) sum += s;
    for (double& s : next) s /= sum;

    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change += std::fabs(next[i] - x[i]);
    x.swap(next);
    if (change < opts.tolerance) return to_map(v, x);
  }

  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) residual += std::fabs(x[i] - next[i]);
  throw NonConvergence("pagerank did not converge in " +
                       std::to_string(opts.max_iterations) +
                       " iterations, residual " + format_double(residual));
}

std::map<NodeId, double> betweenness(const CommGraph& g) {
  require_nonempty(g);
  const IndexedView v = g.indexed();
  const std::size_t n = v.size();
  std::vector<double> score(n, 0.0);

  if (n >= 3) {
    // Brandes: one BFS per source, then reverse dependency accumulation.
    std::vector<long long> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<std::vector<std::size_t>> pred(n);
    std::vector<std::size_t> order;
    order.reserve(n);

    for (std::size_t s = 0; s < n; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      std::fill(sigma.begin(), sigma.end(), 0.0);
      std::fill(delta.begin(), delta.end(), 0.0);
      for (auto& p : pred) p.clear();
      order.clear();

      std::deque<std::size_t> queue;
      dist[s] = 0;
      sigma[s] = 1.0;
      queue.push_back(s);
      while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        order.push_back(u);
        for (std::size_t w : v.out[u]) {
          if (dist[w] < 0) {
            dist[w] = dist[u] + 1;
            queue.push_back(w);
          }
          if (dist[w] == dist[u] + 1) {
            sigma[w] += sigma[u];
            pred[w].push_back(u);
          }
        }
      }
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::size_t w = *it;
        for (std::size_t u : pred[w]) {
          delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
        }
        if (w != s) score[w] += delta[w];
      }
    }
    const double norm = static_cast<double>(n - 1) * static_cast<double>(n - 2);
    for (double& x : score) x /= norm;
  }
  return to_map(v, score);
}

std::map<NodeId, double> closeness(const CommGraph& g) {
  require_nonempty(g);
  const IndexedView v = g.indexed();
  const std::size_t n = v.size();
  std::vector<double> score(n, 0.0);
  if (n == 1) return to_map(v, score);

  std::vector<long long> dist(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<std::size_t> queue;
    dist[s] = 0;
    queue.push_back(s);
    double sum = 0.0;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      if (u != s) sum += 1.0 / static_cast<double>(dist[u]);
      for (std::size_t w : v.out[u]) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    score[s] = sum / static_cast<double>(n - 1);
  }
  return to_map(v, score);
}

std::map<NodeId, double> scale_unit(const std::map<NodeId, double>& values) {
  if (values.empty()) throw InvalidInput("scale_unit on empty input");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& [id, x] : values) {
    if (!std::isfinite(x)) throw InvalidInput("scale_unit on non-finite value");
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  std::map<NodeId, double> out;
  if (hi == lo) {
    for (const auto& [id, x] : values) out[id] = 0.0;
    return out;
  }
  const double span = hi - lo;
  for (const auto& [id, x] : values) out[id] = (x - lo) / span;
  return out;
}

std::vector<NodeMetrics> compute_metrics(const CommGraph& g, const PageRankOptions& pr) {
  const std::map<NodeId, double> pr_raw = pagerank(g, pr);
  const std::map<NodeId, double> bt_raw = betweenness(g);
  const std::map<NodeId, double> cl_raw = closeness(g);
  const std::map<NodeId, double> pr_s = scale_unit(pr_raw);
  const std::map<NodeId, double> bt_s = scale_unit(bt_raw);
  const std::map<NodeId, double> cl_s = scale_unit(cl_raw);

  std::vector<NodeMetrics> out;
  out.reserve(pr_raw.size());
  for (const auto& [id, x] : pr_raw) {
    NodeMetrics m;
    m.node_id = id;
    m.pagerank_raw = x;
    m.pagerank = pr_s.at(id);
    m.betweenness_raw = bt_raw.at(id);
    m.betweenness = bt_s.at(id);
    m.closeness_raw = cl_raw.at(id);
    m.closeness = cl_s.at(id);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace fundgraph
