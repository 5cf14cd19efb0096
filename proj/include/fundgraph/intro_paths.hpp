#pragma once

#include <vector>

#include "fundgraph/graph.hpp"

namespace fundgraph {

struct IntroPath {
  std::vector<NodeId> nodes;       // founder first, target last
  Weight total_strength = 0;       // summed email counts (both directions) per hop

  std::size_t hops() const { return nodes.empty() ? 0 : nodes.size() - 1; }
};

// Undirected traversal; only minimum-hop paths within max_hops are considered,
// ranked by total_strength descending (ties by lexicographic node sequence)
// and truncated to k. Empty when the target is unreachable within max_hops.
std::vector<IntroPath> top_intro_paths(const CommGraph& g, const NodeId& founder,
                                       const NodeId& investor, int max_hops = 4,
                                       int k = 3);

// Union of per-investor top paths, re-ranked by (hops asc, strength desc,
// lexicographic node sequence), truncated to k.
std::vector<IntroPath> firm_intro_paths(const CommGraph& g, const NodeId& founder,
                                        const std::vector<NodeId>& firm_investors,
                                        int max_hops = 4, int k = 3);

}  // namespace fundgraph
