#include "fundgraph/communities.hpp"

#include <algorithm>
#include <numeric>

#include "fundgraph/errors.hpp"
#include "fundgraph/util.hpp"

namespace fundgraph {

Partition Partition::canonicalize(const std::map<NodeId, NodeId>& raw_assignment) {
  // group by raw label, then rename each group to its smallest member
  std::map<NodeId, std::set<NodeId>> groups;
  for (const auto& [node, label] : raw_assignment) groups[label].insert(node);

  Partition p;
  for (const auto& [label, members] : groups) {
    const CommunityId canon = *members.begin();
    p.communities[canon] = members;
    for (const NodeId& node : members) p.assignment[node] = canon;
  }
  return p;
}

Partition label_propagation(const CommGraph& g, std::uint64_t seed, int max_iter) {
  if (g.node_count() == 0) return {};
  const IndexedView v = g.indexed();
  const std::size_t n = v.size();

  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), 0);
  std::vector<std::size_t> visit(n);
  std::iota(visit.begin(), visit.end(), 0);

  Rng rng(seed);
  bool converged = false;
  for (int iter = 0; iter < max_iter && !converged; ++iter) {
    rng.shuffle(visit);
    converged = true;
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t node : visit) {
      if (v.undirected[node].empty()) continue;
      counts.clear();
      for (std::size_t nb : v.undirected[node]) ++counts[label[nb]];
      std::size_t best = 0;
      for (const auto& [lab, c] : counts) best = std::max(best, c);
      // Keep the current label when it is among the argmax; otherwise pick
      // uniformly among the tied majority labels. Without the keep rule the
      // no-change termination condition is unreachable on symmetric graphs.
      if (counts.count(label[node]) && counts.at(label[node]) == best) continue;
      std::vector<std::size_t> tied;
      for (const auto& [lab, c] : counts) {
        if (c == best) tied.push_back(lab);
      }
      label[node] = tied[rng.next_below(tied.size())];
      converged = false;
    }
  }
  std::map<NodeId, NodeId> raw;
  for (std::size_t i = 0; i < n; ++i) raw[v.ids[i]] = v.ids[label[i]];
  if (!converged) {
    throw PartitionNonConvergence("label propagation did not stabilize in " +
                                      std::to_string(max_iter) + " iterations",
                                  Partition::canonicalize(raw));
  }
  return Partition::canonicalize(raw);
}

namespace {

// Weighted undirected multigraph for the aggregation levels. Self-loops hold
// the internal weight of a collapsed community and count twice in degrees.
struct LevelGraph {
  std::vector<std::map<std::size_t, double>> weights;  // symmetric, [i][i] = self-loop
  std::vector<double> degree;                          // weighted, self-loops doubled
  double total_weight = 0;                             // m = sum of degrees / 2

  void recompute() {
    degree.assign(weights.size(), 0.0);
    total_weight = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      for (const auto& [j, w] : weights[i]) degree[i] += i == j ? 2.0 * w : w;
      total_weight += degree[i];
    }
    total_weight /= 2.0;
  }
};

}  // namespace

Partition louvain(const CommGraph& g, std::uint64_t seed, int max_levels) {
  if (g.node_count() == 0) return {};
  const IndexedView v = g.indexed();

  // membership[i] = community of original node i, refined level by level
  std::vector<std::size_t> membership(v.size());
  std::iota(membership.begin(), membership.end(), 0);

  LevelGraph cur;
  cur.weights.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t nb : v.undirected[i]) cur.weights[i][nb] = 1.0;
  }
  cur.recompute();

  Rng rng(seed);
  for (int level = 0; level < max_levels; ++level) {
    const std::size_t n = cur.weights.size();
    const double m = std::max(cur.total_weight, 1.0);
    std::vector<std::size_t> comm(n);
    std::iota(comm.begin(), comm.end(), 0);
    std::vector<double> comm_degree = cur.degree;

    std::vector<std::size_t> visit(n);
    std::iota(visit.begin(), visit.end(), 0);
    bool moved_any = false;
    for (bool improved = true; improved;) {
      improved = false;
      rng.shuffle(visit);
      for (std::size_t node : visit) {
        const std::size_t home = comm[node];
        std::map<std::size_t, double> links;  // community -> weight from node
        for (const auto& [nb, w] : cur.weights[node]) {
          if (nb != node) links[comm[nb]] += w;
        }
        comm_degree[home] -= cur.degree[node];

        std::size_t best = home;
        double best_gain = 0.0;
        const double home_links = links.count(home) ? links[home] : 0.0;
        const double home_gain =
            home_links / m - comm_degree[home] * cur.degree[node] / (2.0 * m * m);
        for (const auto& [c, l] : links) {
          const double gain = l / m - comm_degree[c] * cur.degree[node] / (2.0 * m * m);
          if (gain - home_gain > best_gain + 1e-12) {
            best_gain = gain - home_gain;
            best = c;
          }
        }
        comm[node] = best;
        comm_degree[best] += cur.degree[node];
        if (best != home) {
          improved = true;
          moved_any = true;
        }
      }
    }
    if (!moved_any) break;

    std::map<std::size_t, std::size_t> renumber;
    for (std::size_t i = 0; i < n; ++i) {
      if (!renumber.count(comm[i])) {
        const std::size_t next = renumber.size();
        renumber[comm[i]] = next;
      }
    }
    for (std::size_t& mcomm : membership) mcomm = renumber.at(comm[mcomm]);

    const std::size_t coarse_n = renumber.size();
    if (coarse_n == n) break;
    // sum edge weights between communities; internal weight becomes a self-loop
    LevelGraph coarse;
    coarse.weights.resize(coarse_n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = renumber.at(comm[i]);
      for (const auto& [j, w] : cur.weights[i]) {
        const std::size_t b = renumber.at(comm[j]);
        if (i == j) {
          coarse.weights[a][a] += w;
        } else if (i < j) {
          if (a == b) {
            coarse.weights[a][a] += w;
          } else {
            coarse.weights[a][b] += w;
            coarse.weights[b][a] += w;
          }
        }
      }
    }
    coarse.recompute();
    cur = std::move(coarse);
  }

  std::map<NodeId, NodeId> raw;
  // name each community after one of its original members
  std::map<std::size_t, NodeId> rep;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto it = rep.find(membership[i]);
    if (it == rep.end()) rep[membership[i]] = v.ids[i];
  }
  for (std::size_t i = 0; i < v.size(); ++i) raw[v.ids[i]] = rep.at(membership[i]);
  return Partition::canonicalize(raw);
}

CommunityStats community_stats(const Partition& p, const CommGraph& labels,
                               std::size_t top_k) {
  for (const auto& [node, comm] : p.assignment) {
    if (!labels.has_node(node)) {
      throw UnknownNode("partition node missing from label graph: " + node);
    }
  }
  CommunityStats stats;
  stats.community_count = p.communities.size();

  std::vector<std::pair<CommunityId, std::size_t>> founder_counts;
  std::size_t total_founders = 0;
  for (const auto& [comm, members] : p.communities) {
    std::size_t founders = 0;
    for (const NodeId& node : members) {
      if (labels.label(node) == NodeLabel::Founder) ++founders;
    }
    total_founders += founders;
    founder_counts.emplace_back(comm, founders);
  }
  stats.mean_founders_per_community =
      stats.community_count == 0
          ? 0.0
          : static_cast<double>(total_founders) / static_cast<double>(stats.community_count);

  std::sort(founder_counts.begin(), founder_counts.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  if (founder_counts.size() > top_k) founder_counts.resize(top_k);
  stats.top_by_founders = std::move(founder_counts);
  return stats;
}

}  // namespace fundgraph
