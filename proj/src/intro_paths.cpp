#include "fundgraph/intro_paths.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "fundgraph/errors.hpp"

namespace fundgraph {

namespace {

struct Candidate {
  std::vector<std::size_t> nodes;
  Weight strength = 0;
};

bool candidate_before(const Candidate& a, const Candidate& b,
                      const std::vector<NodeId>& ids) {
  if (a.strength != b.strength) return a.strength > b.strength;
  const std::size_t len = std::min(a.nodes.size(), b.nodes.size());
  for (std::size_t i = 0; i < len; ++i) {
    if (a.nodes[i] != b.nodes[i]) return ids[a.nodes[i]] < ids[b.nodes[i]];
  }
  return a.nodes.size() < b.nodes.size();
}

std::vector<long long> bfs_undirected(const IndexedView& v, std::size_t src) {
  std::vector<long long> dist(v.size(), -1);
  std::deque<std::size_t> queue;
  dist[src] = 0;
  queue.push_back(src);
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t w : v.undirected[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<IntroPath> top_intro_paths(const CommGraph& g, const NodeId& founder,
                                       const NodeId& investor, int max_hops, int k) {
  if (!g.has_node(founder)) throw UnknownNode("node not in graph: " + founder);
  if (!g.has_node(investor)) throw UnknownNode("node not in graph: " + investor);
  if (founder == investor) throw InvalidInput("founder and investor are the same node");
  if (max_hops < 1 || k < 1) throw InvalidInput("max_hops and k must be positive");

  const IndexedView v = g.indexed();
  const std::size_t src = v.index_of(founder);
  const std::size_t dst = v.index_of(investor);

  const std::vector<long long> from_src = bfs_undirected(v, src);
  if (from_src[dst] < 0 || from_src[dst] > max_hops) return {};
  const long long shortest = from_src[dst];
  const std::vector<long long> from_dst = bfs_undirected(v, dst);

  // Layered shortest-path DAG: node u is on a min-hop path iff
  // dist(src,u) + dist(u,dst) == shortest. Every step advances one BFS
  // layer, so paths cannot repeat nodes. Keep the best k partial paths per
  // node; additive strength makes this exact for the global top k.
  std::vector<std::vector<std::size_t>> layers(static_cast<std::size_t>(shortest) + 1);
  for (std::size_t u = 0; u < v.size(); ++u) {
    if (from_src[u] >= 0 && from_dst[u] >= 0 && from_src[u] + from_dst[u] == shortest) {
      layers[static_cast<std::size_t>(from_src[u])].push_back(u);
    }
  }
  std::vector<std::vector<Candidate>> best(v.size());
  best[src].push_back({{src}, 0});
  for (long long layer = 1; layer <= shortest; ++layer) {
    for (std::size_t u : layers[static_cast<std::size_t>(layer)]) {
      std::vector<Candidate> merged;
      for (std::size_t p : v.undirected[u]) {
        if (from_src[p] != layer - 1 || best[p].empty()) continue;
        if (from_dst[p] < 0 || from_src[p] + from_dst[p] != shortest) continue;
        const Weight step = g.pair_strength(v.ids[p], v.ids[u]);
        for (const Candidate& c : best[p]) {
          Candidate ext = c;
          ext.nodes.push_back(u);
          ext.strength += step;
          merged.push_back(std::move(ext));
        }
      }
      std::sort(merged.begin(), merged.end(), [&](const Candidate& a, const Candidate& b) {
        return candidate_before(a, b, v.ids);
      });
      if (merged.size() > static_cast<std::size_t>(k)) {
        merged.resize(static_cast<std::size_t>(k));
      }
      best[u] = std::move(merged);
    }
  }

  std::vector<IntroPath> result;
  for (const Candidate& c : best[dst]) {
    IntroPath path;
    path.total_strength = c.strength;
    for (std::size_t idx : c.nodes) path.nodes.push_back(v.ids[idx]);
    result.push_back(std::move(path));
  }
  return result;
}

std::vector<IntroPath> firm_intro_paths(const CommGraph& g, const NodeId& founder,
                                        const std::vector<NodeId>& firm_investors,
                                        int max_hops, int k) {
  if (firm_investors.empty()) throw InvalidInput("firm has no investors");
  std::set<NodeId> unique_investors(firm_investors.begin(), firm_investors.end());
  std::vector<IntroPath> pool;
  for (const NodeId& investor : unique_investors) {
    if (investor == founder) continue;
    std::vector<IntroPath> paths = top_intro_paths(g, founder, investor, max_hops, k);
    pool.insert(pool.end(), paths.begin(), paths.end());
  }
  std::sort(pool.begin(), pool.end(), [](const IntroPath& a, const IntroPath& b) {
    if (a.hops() != b.hops()) return a.hops() < b.hops();
    if (a.total_strength != b.total_strength) return a.total_strength > b.total_strength;
    return a.nodes < b.nodes;
  });
  if (pool.size() > static_cast<std::size_t>(k)) pool.resize(static_cast<std::size_t>(k));
  return pool;
}

}  // namespace fundgraph
