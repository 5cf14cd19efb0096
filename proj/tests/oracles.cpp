#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>

#include "fundgraph/errors.hpp"

namespace oracle {

using fundgraph::IndexedView;
using fundgraph::IntroPath;
using fundgraph::Weight;

std::map<NodeId, double> pagerank_dense(const CommGraph& g, double damping) {
  const IndexedView v = g.indexed();
  const std::size_t n = v.size();
  // A = I - d M, column-stochastic M with uniform dangling columns
  std::vector<double> a(n * n, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    if (v.out[col].empty()) {
      for (std::size_t row = 0; row < n; ++row) a[row * n + col] = 1.0 / static_cast<double>(n);
    } else {
      for (std::size_t row : v.out[col]) {
        a[row * n + col] = 1.0 / static_cast<double>(v.out[col].size());
      }
    }
  }
  for (std::size_t i = 0; i < n * n; ++i) a[i] = -damping * a[i];
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] += 1.0;

  std::vector<double> b(n, (1.0 - damping) / static_cast<double>(n));
  // Gaussian elimination with partial pivoting
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::fabs(a[row * n + col]) > std::fabs(a[pivot * n + col])) pivot = row;
    }
    for (std::size_t q = 0; q < n; ++q) std::swap(a[pivot * n + q], a[col * n + q]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = a[row * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t q = col; q < n; ++q) a[row * n + q] -= f * a[col * n + q];
      b[row] -= f * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t col = n; col-- > 0;) {
    double s = b[col];
    for (std::size_t q = col + 1; q < n; ++q) s -= a[col * n + q] * x[q];
    x[col] = s / a[col * n + col];
  }
  std::map<NodeId, double> out;
  for (std::size_t i = 0; i < n; ++i) out[v.ids[i]] = x[i];
  return out;
}

std::vector<std::vector<long long>> floyd_warshall(const CommGraph& g,
                                                   std::vector<NodeId>& ids_out) {
  const IndexedView v = g.indexed();
  const std::size_t n = v.size();
  ids_out = v.ids;
  const long long inf = 1LL << 40;
  std::vector<std::vector<long long>> dist(n, std::vector<long long>(n, inf));
  for (std::size_t i = 0; i < n; ++i) dist[i][i] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : v.out[i]) dist[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (dist[i][k] + dist[k][j] < dist[i][j]) dist[i][j] = dist[i][k] + dist[k][j];
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (dist[i][j] >= inf) dist[i][j] = -1;
    }
  }
  return dist;
}

std::map<NodeId, double> betweenness_enumerated(const CommGraph& g) {
  std::vector<NodeId> ids;
  const std::vector<std::vector<long long>> dist = floyd_warshall(g, ids);
  const IndexedView v = g.indexed();
  const std::size_t n = ids.size();

  std::vector<double> score(n, 0.0);
  if (n >= 3) {
    // enumerate every shortest s->t path and count interior visits
    std::vector<std::vector<std::size_t>> all_paths;
    std::vector<std::size_t> current;
    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t u, std::size_t t) {
      current.push_back(u);
      if (u == t) {
        all_paths.push_back(current);
      } else {
        for (std::size_t w : v.out[u]) {
          if (dist[u][t] >= 0 && dist[w][t] >= 0 && dist[w][t] + 1 == dist[u][t]) {
            dfs(w, t);
          }
        }
      }
      current.pop_back();
    };

    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = 0; t < n; ++t) {
        if (s == t || dist[s][t] < 0) continue;
        all_paths.clear();
        dfs(s, t);
        const double sigma = static_cast<double>(all_paths.size());
        std::vector<double> through(n, 0.0);
        for (const std::vector<std::size_t>& path : all_paths) {
          for (std::size_t i = 1; i + 1 < path.size(); ++i) through[path[i]] += 1.0;
        }
        for (std::size_t u = 0; u < n; ++u) score[u] += through[u] / sigma;
      }
    }
    const double norm = static_cast<double>(n - 1) * static_cast<double>(n - 2);
    for (double& x : score) x /= norm;
  }
  std::map<NodeId, double> out;
  for (std::size_t i = 0; i < n; ++i) out[ids[i]] = score[i];
  return out;
}

std::map<NodeId, double> closeness_floyd(const CommGraph& g) {
  std::vector<NodeId> ids;
  const std::vector<std::vector<long long>> dist = floyd_warshall(g, ids);
  const std::size_t n = ids.size();
  std::map<NodeId, double> out;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && dist[i][j] > 0) sum += 1.0 / static_cast<double>(dist[i][j]);
    }
    out[ids[i]] = n <= 1 ? 0.0 : sum / static_cast<double>(n - 1);
  }
  return out;
}

namespace {
int sign_of(long long x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
}  // namespace

double tau_pairs(const std::vector<std::size_t>& rg) {
  const std::size_t n = rg.size();
  long long sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      sum += sign_of(static_cast<long long>(rg[i]) - static_cast<long long>(rg[j])) *
             sign_of(static_cast<long long>(i) - static_cast<long long>(j));
    }
  }
  return static_cast<double>(sum) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double rho_pearson(const std::vector<std::size_t>& rg) {
  const std::size_t n = rg.size();
  double mean_x = 0, mean_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += static_cast<double>(rg[i]);
    mean_y += static_cast<double>(i);
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double cov = 0, var_x = 0, var_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(rg[i]) - mean_x;
    const double dy = static_cast<double>(i) - mean_y;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  return cov / std::sqrt(var_x * var_y);
}

std::map<NodeId, int> weak_components(const CommGraph& g) {
  const IndexedView v = g.indexed();
  std::map<NodeId, int> comp;
  std::vector<int> mark(v.size(), -1);
  int next = 0;
  for (std::size_t s = 0; s < v.size(); ++s) {
    if (mark[s] >= 0) continue;
    std::vector<std::size_t> stack = {s};
    mark[s] = next;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t w : v.undirected[u]) {
        if (mark[w] < 0) {
          mark[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  for (std::size_t i = 0; i < v.size(); ++i) comp[v.ids[i]] = mark[i];
  return comp;
}

std::vector<IntroPath> enumerate_intro_paths(const CommGraph& g, const NodeId& from,
                                             const NodeId& to, int max_hops, int k) {
  const IndexedView v = g.indexed();
  const std::size_t src = v.index_of(from);
  const std::size_t dst = v.index_of(to);

  // exhaustive DFS of all simple paths up to max_hops
  std::vector<std::vector<std::size_t>> found;
  std::vector<std::size_t> current = {src};
  std::set<std::size_t> on_path = {src};
  std::function<void(std::size_t)> dfs = [&](std::size_t u) {
    if (u == dst) {
      found.push_back(current);
      return;
    }
    if (current.size() > static_cast<std::size_t>(max_hops)) return;
    for (std::size_t w : v.undirected[u]) {
      if (on_path.count(w)) continue;
      current.push_back(w);
      on_path.insert(w);
      dfs(w);
      current.pop_back();
      on_path.erase(w);
    }
  };
  dfs(src);
  if (found.empty()) return {};

  std::size_t shortest = static_cast<std::size_t>(max_hops) + 1;
  for (const auto& p : found) shortest = std::min(shortest, p.size() - 1);
  std::vector<IntroPath> paths;
  for (const auto& p : found) {
    if (p.size() - 1 != shortest) continue;
    IntroPath path;
    Weight strength = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      strength += g.pair_strength(v.ids[p[i]], v.ids[p[i + 1]]);
    }
    path.total_strength = strength;
    for (std::size_t idx : p) path.nodes.push_back(v.ids[idx]);
    paths.push_back(std::move(path));
  }
  std::sort(paths.begin(), paths.end(), [](const IntroPath& a, const IntroPath& b) {
    if (a.total_strength != b.total_strength) return a.total_strength > b.total_strength;
    return a.nodes < b.nodes;
  });
  if (paths.size() > static_cast<std::size_t>(k)) paths.resize(static_cast<std::size_t>(k));
  return paths;
}

CommGraph random_graph(fundgraph::Rng& rng, std::size_t nodes, double edge_prob,
                       int max_weight) {
  CommGraph g;
  std::vector<NodeId> ids;
  for (std::size_t i = 0; i < nodes; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "n%03zu", i);
    ids.emplace_back(buf);
    g.add_node(ids.back());
  }
  for (std::size_t i = 0; i < nodes; ++i) {
    for (std::size_t j = 0; j < nodes; ++j) {
      if (i == j) continue;
      if (rng.next_double() < edge_prob) {
        g.add_edge_weight(ids[i], ids[j],
                          1 + rng.next_below(static_cast<std::uint64_t>(max_weight)));
      }
    }
  }
  return g;
}

}  // namespace oracle
