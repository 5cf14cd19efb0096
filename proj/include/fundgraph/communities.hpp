#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fundgraph/errors.hpp"
#include "fundgraph/graph.hpp"

namespace fundgraph {

using CommunityId = NodeId;  // canonical id = smallest member node id

struct Partition {
  std::map<NodeId, CommunityId> assignment;
  std::map<CommunityId, std::set<NodeId>> communities;

  // Rebuilds the inverse image and canonicalizes community ids.
  static Partition canonicalize(const std::map<NodeId, NodeId>& raw_assignment);
};

class PartitionNonConvergence : public DomainError {
 public:
  PartitionNonConvergence(const std::string& message, Partition partial)
      : DomainError("NonConvergence", message), partial_partition(std::move(partial)) {}

  Partition partial_partition;
};

// Asynchronous label propagation over undirected neighborhoods, one neighbor
// vote per adjacent node regardless of edge weight. Deterministic given seed.
Partition label_propagation(const CommGraph& g, std::uint64_t seed, int max_iter = 100);

// Modularity-based alternative behind the same Partition contract.
Partition louvain(const CommGraph& g, std::uint64_t seed, int max_levels = 20);

struct CommunityStats {
  std::size_t community_count = 0;
  double mean_founders_per_community = 0;
  // (community id, founder count), sorted by count desc then id asc
  std::vector<std::pair<CommunityId, std::size_t>> top_by_founders;
};

CommunityStats community_stats(const Partition& p, const CommGraph& labels,
                               std::size_t top_k = 3);

}  // namespace fundgraph
