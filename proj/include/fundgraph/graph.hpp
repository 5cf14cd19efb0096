#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fundgraph {

using NodeId = std::string;
using Weight = std::uint64_t;

enum class NodeLabel { Person, Founder, Investor };

std::string to_string(NodeLabel label);

// Raw role flags accumulated per node; the effective label is derived via
// resolve_label so Founder/Investor stay mutually exclusive.
struct LabelFlags {
  bool founder = false;
  bool investor = false;
  bool employed_by_fund = false;

  void merge(const LabelFlags& other) {
    founder = founder || other.founder;
    investor = investor || other.investor;
    employed_by_fund = employed_by_fund || other.employed_by_fund;
  }

  bool operator==(const LabelFlags&) const = default;
};

NodeLabel resolve_label(bool is_founder, bool is_investor, bool employed_by_fund);

struct GraphDelta {
  std::map<std::pair<NodeId, NodeId>, Weight> edge_increments;
  std::map<NodeId, LabelFlags> new_labels;

  void add_edge(const NodeId& src, const NodeId& dst, Weight increment = 1);
  void add_label(const NodeId& node, const LabelFlags& flags);
  // Associative and commutative, so deltas combine in any order.
  void merge(const GraphDelta& other);
  bool empty() const { return edge_increments.empty() && new_labels.empty(); }
};

// Dense index over a graph's nodes for the metric algorithms.
struct IndexedView {
  std::vector<NodeId> ids;  // sorted ascending; index = position
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::vector<std::size_t>> in;
  std::vector<std::vector<std::size_t>> undirected;  // dedup union of out/in

  std::size_t size() const { return ids.size(); }
  std::size_t index_of(const NodeId& id) const;  // throws UnknownNode
};

// Directed weighted multigraph collapsed to one weighted edge per (src, dst).
// Immutable in practice once built: mutation entry points return or produce
// new graphs (apply_delta, remove_orphans, overlay).
class CommGraph {
 public:
  void add_node(const NodeId& id, const LabelFlags& flags = {});
  void merge_flags(const NodeId& id, const LabelFlags& flags);
  // Creates missing endpoints as Person. Self-loops are rejected.
  void add_edge_weight(const NodeId& src, const NodeId& dst, Weight w);

  bool has_node(const NodeId& id) const { return nodes_.count(id) != 0; }
  bool has_edge(const NodeId& src, const NodeId& dst) const;
  Weight edge_weight(const NodeId& src, const NodeId& dst) const;  // 0 if absent
  // Emails exchanged in either direction; connection strength for intro paths.
  Weight pair_strength(const NodeId& a, const NodeId& b) const;

  NodeLabel label(const NodeId& id) const;  // throws UnknownNode
  const LabelFlags& flags(const NodeId& id) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const;
  Weight total_weight() const;
  std::size_t in_degree(const NodeId& id) const;
  std::size_t out_degree(const NodeId& id) const;

  const std::map<NodeId, LabelFlags>& nodes() const { return nodes_; }
  const std::map<NodeId, std::map<NodeId, Weight>>& out_edges() const { return out_; }

  std::vector<NodeId> nodes_with_label(NodeLabel label) const;
  IndexedView indexed() const;

  bool operator==(const CommGraph&) const = default;

 private:
  std::map<NodeId, LabelFlags> nodes_;
  std::map<NodeId, std::map<NodeId, Weight>> out_;
  std::map<NodeId, std::set<NodeId>> in_;
};

CommGraph apply_delta(const CommGraph& g, const GraphDelta& d);
CommGraph remove_orphans(const CommGraph& g);
// Drops nodes whose in- or out-degree exceeds the given percentile of the
// nonzero degree distribution. Opt-in outlier trimming.
CommGraph remove_degree_outliers(const CommGraph& g, double percentile);

// Versioned, sorted, line-oriented text snapshot (diffable, byte-stable).
std::string save_snapshot(const CommGraph& g);
CommGraph load_snapshot(const std::string& text);

std::string save_delta(const GraphDelta& d);
GraphDelta load_delta(const std::string& text);

}  // namespace fundgraph
