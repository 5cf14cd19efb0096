#pragma once

#include <map>
#include <vector>

#include "fundgraph/graph.hpp"

namespace fundgraph {

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-10;  // L1 change between iterations
  int max_iterations = 1000;
};

// Scores sum to 1. Dangling mass is redistributed uniformly each iteration.
// Hop-based: edge weights are ignored, as are they for the other metrics.
std::map<NodeId, double> pagerank(const CommGraph& g, const PageRankOptions& opts = {});

// Directed shortest-path (unit hop) betweenness, Brandes accumulation,
// normalized by (N-1)(N-2) for N >= 3, zero otherwise.
std::map<NodeId, double> betweenness(const CommGraph& g);

// Harmonic closeness over directed hop distances:
//   c(v) = (1/(N-1)) * sum_{u != v} 1/d(v, u),  1/inf = 0.
std::map<NodeId, double> closeness(const CommGraph& g);

// Affine min-max scaling to [0, 1]; a constant input maps to all zeros so a
// degenerate metric contributes nothing downstream.
std::map<NodeId, double> scale_unit(const std::map<NodeId, double>& values);

struct MetricVector {
  NodeId node_id;
  double pagerank = 0;
  double betweenness = 0;
  double closeness = 0;
};

struct NodeMetrics {
  NodeId node_id;
  double pagerank_raw = 0, pagerank = 0;
  double betweenness_raw = 0, betweenness = 0;
  double closeness_raw = 0, closeness = 0;

  MetricVector scaled() const { return {node_id, pagerank, betweenness, closeness}; }
};

// All three metrics plus their unit scalings, one record per node, sorted.
std::vector<NodeMetrics> compute_metrics(const CommGraph& g, const PageRankOptions& pr = {});

}  // namespace fundgraph
