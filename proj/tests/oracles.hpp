#pragma once

// Independent reference implementations used to check the library. These
// deliberately take the slow, definition-level route: dense linear solves,
// Floyd-Warshall distances, explicit path enumeration, O(N^2) pair loops.

#include <map>
#include <vector>

#include "fundgraph/graph.hpp"
#include "fundgraph/intro_paths.hpp"
#include "fundgraph/ranking.hpp"
#include "fundgraph/util.hpp"

namespace oracle {

using fundgraph::CommGraph;
using fundgraph::NodeId;

// PageRank by dense solve of (I - dM) x = (1-d)/N * 1, where M is the
// column-stochastic transition matrix with dangling columns set to 1/N.
std::map<NodeId, double> pagerank_dense(const CommGraph& g, double damping);

// All-pairs hop distances via Floyd-Warshall (directed); -1 = unreachable.
std::vector<std::vector<long long>> floyd_warshall(const CommGraph& g,
                                                   std::vector<NodeId>& ids_out);

// Betweenness by explicit enumeration of every shortest path per (s, t) pair,
// normalized by (N-1)(N-2) for N >= 3.
std::map<NodeId, double> betweenness_enumerated(const CommGraph& g);

// Harmonic closeness from Floyd-Warshall distances.
std::map<NodeId, double> closeness_floyd(const CommGraph& g);

// Kendall tau by the definition-level O(N^2) sign-product pair loop over the
// two rank sequences.
double tau_pairs(const std::vector<std::size_t>& candidate_rg);

// Spearman rho as the Pearson correlation of the two rank vectors.
double rho_pearson(const std::vector<std::size_t>& candidate_rg);

// Weakly connected components; returns component index per node.
std::map<NodeId, int> weak_components(const CommGraph& g);

// Every minimum-hop undirected path between two nodes, by DFS enumeration,
// ranked by (strength desc, lexicographic node sequence).
std::vector<fundgraph::IntroPath> enumerate_intro_paths(const CommGraph& g,
                                                        const NodeId& from,
                                                        const NodeId& to, int max_hops,
                                                        int k);

// Seeded random graph for oracle comparisons (not the synth module).
CommGraph random_graph(fundgraph::Rng& rng, std::size_t nodes, double edge_prob,
                       int max_weight = 5);

}  // namespace oracle
