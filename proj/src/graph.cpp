#include "fundgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fundgraph/errors.hpp"
#include "fundgraph/util.hpp"

namespace fundgraph {

std::string to_string(NodeLabel label) {
  switch (label) {
    case NodeLabel::Person: return "person";
    case NodeLabel::Founder: return "founder";
    case NodeLabel::Investor: return "investor";
  }
  return "person";
}

NodeLabel resolve_label(bool is_founder, bool is_investor, bool employed_by_fund) {
  if (is_founder && is_investor) {
    return employed_by_fund ? NodeLabel::Investor : NodeLabel::Founder;
  }
  if (is_investor) return NodeLabel::Investor;
  if (is_founder) return NodeLabel::Founder;
  return NodeLabel::Person;
}

void GraphDelta::add_edge(const NodeId& src, const NodeId& dst, Weight increment) {
  if (increment == 0) throw InvalidInput("delta increments must be positive");
  if (src == dst) throw InvalidInput("delta edge is a self-loop: " + src);
  edge_increments[{src, dst}] += increment;
}

void GraphDelta::add_label(const NodeId& node, const LabelFlags& flags) {
  new_labels[node].merge(flags);
}

void GraphDelta::merge(const GraphDelta& other) {
  for (const auto& [edge, inc] : other.edge_increments) edge_increments[edge] += inc;
  for (const auto& [node, flags] : other.new_labels) new_labels[node].merge(flags);
}

std::size_t IndexedView::index_of(const NodeId& id) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) throw UnknownNode("node not in graph: " + id);
  return static_cast<std::size_t>(it - ids.begin());
}

void CommGraph::add_node(const NodeId& id, const LabelFlags& flags) {
  if (id.empty()) throw InvalidInput("empty node id");
  nodes_[id].merge(flags);
}

void CommGraph::merge_flags(const NodeId& id, const LabelFlags& flags) {
  add_node(id, flags);
}

void CommGraph::add_edge_weight(const NodeId& src, const NodeId& dst, Weight w) {
  if (w == 0) throw InvalidInput("edge weight must be positive");
  if (src == dst) throw InvalidInput("self-loop rejected: " + src);
  add_node(src);
  add_node(dst);
  out_[src][dst] += w;
  in_[dst].insert(src);
}

bool CommGraph::has_edge(const NodeId& src, const NodeId& dst) const {
  auto it = out_.find(src);
  return it != out_.end() && it->second.count(dst) != 0;
}

Weight CommGraph::edge_weight(const NodeId& src, const NodeId& dst) const {
  auto it = out_.find(src);
  if (it == out_.end()) return 0;
  auto jt = it->second.find(dst);
  return jt == it->second.end() ? 0 : jt->second;
}

Weight CommGraph::pair_strength(const NodeId& a, const NodeId& b) const {
  return edge_weight(a, b) + edge_weight(b, a);
}

NodeLabel CommGraph::label(const NodeId& id) const {
  const LabelFlags& f = flags(id);
  return resolve_label(f.founder, f.investor, f.employed_by_fund);
}

const LabelFlags& CommGraph::flags(const NodeId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw UnknownNode("node not in graph: " + id);
  return it->second;
}

std::size_t CommGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& [src, targets] : out_) n += targets.size();
  return n;
}

Weight CommGraph::total_weight() const {
  Weight total = 0;
  for (const auto& [src, targets] : out_)
    for (const auto& [dst, w] : targets) total += w;
  return total;
}

std::size_t CommGraph::in_degree(const NodeId& id) const {
  auto it = in_.find(id);
  return it == in_.end() ? 0 : it->second.size();
}

std::size_t CommGraph::out_degree(const NodeId& id) const {
  auto it = out_.find(id);
  return it == out_.end() ? 0 : it->second.size();
}

std::vector<NodeId> CommGraph::nodes_with_label(NodeLabel want) const {
  std::vector<NodeId> result;
  for (const auto& [id, f] : nodes_) {
    if (resolve_label(f.founder, f.investor, f.employed_by_fund) == want) {
      result.push_back(id);
    }
  }
  return result;
}

IndexedView CommGraph::indexed() const {
  IndexedView v;
  v.ids.reserve(nodes_.size());
  for (const auto& [id, f] : nodes_) v.ids.push_back(id);
  const std::size_t n = v.ids.size();
  v.out.resize(n);
  v.in.resize(n);
  v.undirected.resize(n);
  for (const auto& [src, targets] : out_) {
    const std::size_t s = v.index_of(src);
    for (const auto& [dst, w] : targets) {
      const std::size_t d = v.index_of(dst);
      v.out[s].push_back(d);
      v.in[d].push_back(s);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> u = v.out[i];
    u.insert(u.end(), v.in[i].begin(), v.in[i].end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    v.undirected[i] = std::move(u);
    std::sort(v.in[i].begin(), v.in[i].end());
  }
  return v;
}

CommGraph apply_delta(const CommGraph& g, const GraphDelta& d) {
  CommGraph result = g;
  for (const auto& [edge, inc] : d.edge_increments) {
    result.add_edge_weight(edge.first, edge.second, inc);
  }
  for (const auto& [node, flags] : d.new_labels) {
    result.merge_flags(node, flags);
  }
  return result;
}

CommGraph remove_orphans(const CommGraph& g) {
  CommGraph result;
  for (const auto& [id, flags] : g.nodes()) {
    if (g.in_degree(id) > 0 || g.out_degree(id) > 0) result.add_node(id, flags);
  }
  for (const auto& [src, targets] : g.out_edges())
    for (const auto& [dst, w] : targets) result.add_edge_weight(src, dst, w);
  return result;
}

CommGraph remove_degree_outliers(const CommGraph& g, double percentile) {
  if (percentile <= 0.0 || percentile > 100.0) {
    throw InvalidInput("percentile must be in (0, 100]");
  }
  std::vector<std::size_t> degrees;
  for (const auto& [id, flags] : g.nodes()) {
    const std::size_t d = std::max(g.in_degree(id), g.out_degree(id));
    if (d > 0) degrees.push_back(d);
  }
  if (degrees.empty()) return g;
  std::sort(degrees.begin(), degrees.end());
  const std::size_t idx = std::min(
      degrees.size() - 1,
      static_cast<std::size_t>(std::ceil(percentile / 100.0 * degrees.size())) - 1);
  const std::size_t cutoff = degrees[idx];

  std::set<NodeId> dropped;
  for (const auto& [id, flags] : g.nodes()) {
    if (g.in_degree(id) > cutoff || g.out_degree(id) > cutoff) dropped.insert(id);
  }
  CommGraph result;
  for (const auto& [id, flags] : g.nodes()) {
    if (!dropped.count(id)) result.add_node(id, flags);
  }
  for (const auto& [src, targets] : g.out_edges()) {
    if (dropped.count(src)) continue;
    for (const auto& [dst, w] : targets) {
      if (!dropped.count(dst)) result.add_edge_weight(src, dst, w);
    }
  }
  return result;
}

namespace {

constexpr const char* kSnapshotMagic = "fundgraph-snapshot";
constexpr const char* kDeltaMagic = "fundgraph-delta";
constexpr int kFormatVersion = 1;

std::string flags_code(const LabelFlags& f) {
  std::string code;
  if (f.founder) code += 'f';
  if (f.investor) code += 'i';
  if (f.employed_by_fund) code += 'e';
  return code.empty() ? "-" : code;
}

LabelFlags parse_flags(const std::string& code, const char* context) {
  LabelFlags f;
  if (code == "-") return f;
  for (char c : code) {
    switch (c) {
      case 'f': f.founder = true; break;
      case 'i': f.investor = true; break;
      case 'e': f.employed_by_fund = true; break;
      default: throw CorruptSnapshot(std::string(context) + ": bad flags '" + code + "'");
    }
  }
  return f;
}

void check_id(const NodeId& id) {
  if (id.empty()) throw InvalidInput("empty node id");
  for (char c : id) {
    if (c == '\t' || c == '\n' || c == '\r') {
      throw InvalidInput("node id contains control characters: " + id);
    }
  }
}

struct LineReader {
  std::istringstream in;
  const char* context;

  explicit LineReader(const std::string& text, const char* ctx)
      : in(text), context(ctx) {}

  std::string next() {
    std::string line;
    if (!std::getline(in, line)) {
      throw CorruptSnapshot(std::string(context) + ": truncated");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }
};

void parse_header(LineReader& r, const char* magic) {
  const std::string header = r.next();
  const std::vector<std::string> parts = split(header, ' ');
  if (parts.size() != 2 || parts[0] != magic) {
    throw CorruptSnapshot(std::string(r.context) + ": bad header");
  }
  if (parts[1] != "v" + std::to_string(kFormatVersion)) {
    throw UnsupportedVersion(std::string(r.context) + ": version " + parts[1]);
  }
}

std::size_t parse_count(LineReader& r, const char* section) {
  const std::vector<std::string> parts = split(r.next(), ' ');
  if (parts.size() != 2 || parts[0] != section) {
    throw CorruptSnapshot(std::string(r.context) + ": expected '" + section + " <count>'");
  }
  try {
    return static_cast<std::size_t>(std::stoull(parts[1]));
  } catch (const std::exception&) {
    throw CorruptSnapshot(std::string(r.context) + ": bad count");
  }
}

}  // namespace

std::string save_snapshot(const CommGraph& g) {
  std::ostringstream out;
  out << kSnapshotMagic << " v" << kFormatVersion << '\n';
  out << "nodes " << g.node_count() << '\n';
  for (const auto& [id, flags] : g.nodes()) {
    check_id(id);
    out << id << '\t' << flags_code(flags) << '\n';
  }
  out << "edges " << g.edge_count() << '\n';
  for (const auto& [src, targets] : g.out_edges())
    for (const auto& [dst, w] : targets) out << src << '\t' << dst << '\t' << w << '\n';
  return out.str();
}

CommGraph load_snapshot(const std::string& text) {
  LineReader r(text, "snapshot");
  parse_header(r, kSnapshotMagic);
  CommGraph g;
  const std::size_t node_count = parse_count(r, "nodes");
  for (std::size_t i = 0; i < node_count; ++i) {
    const std::vector<std::string> parts = split(r.next(), '\t');
    if (parts.size() != 2) throw CorruptSnapshot("snapshot: bad node line");
    g.add_node(parts[0], parse_flags(parts[1], "snapshot"));
  }
  const std::size_t edge_count = parse_count(r, "edges");
  for (std::size_t i = 0; i < edge_count; ++i) {
    const std::vector<std::string> parts = split(r.next(), '\t');
    if (parts.size() != 3) throw CorruptSnapshot("snapshot: bad edge line");
    if (!g.has_node(parts[0]) || !g.has_node(parts[1])) {
      throw CorruptSnapshot("snapshot: edge endpoint missing from node section");
    }
    Weight w = 0;
    try {
      w = static_cast<Weight>(std::stoull(parts[2]));
    } catch (const std::exception&) {
      throw CorruptSnapshot("snapshot: bad edge weight");
    }
    if (w == 0) throw CorruptSnapshot("snapshot: zero edge weight");
    g.add_edge_weight(parts[0], parts[1], w);
  }
  return g;
}

std::string save_delta(const GraphDelta& d) {
  std::ostringstream out;
  out << kDeltaMagic << " v" << kFormatVersion << '\n';
  out << "labels " << d.new_labels.size() << '\n';
  for (const auto& [node, flags] : d.new_labels) {
    check_id(node);
    out << node << '\t' << flags_code(flags) << '\n';
  }
  out << "edges " << d.edge_increments.size() << '\n';
  for (const auto& [edge, inc] : d.edge_increments) {
    check_id(edge.first);
    check_id(edge.second);
    out << edge.first << '\t' << edge.second << '\t' << inc << '\n';
  }
  return out.str();
}

GraphDelta load_delta(const std::string& text) {
  LineReader r(text, "delta");
  parse_header(r, kDeltaMagic);
  GraphDelta d;
  const std::size_t label_count = parse_count(r, "labels");
  for (std::size_t i = 0; i < label_count; ++i) {
    const std::vector<std::string> parts = split(r.next(), '\t');
    if (parts.size() != 2) throw CorruptSnapshot("delta: bad label line");
    d.add_label(parts[0], parse_flags(parts[1], "delta"));
  }
  const std::size_t edge_count = parse_count(r, "edges");
  for (std::size_t i = 0; i < edge_count; ++i) {
    const std::vector<std::string> parts = split(r.next(), '\t');
    if (parts.size() != 3) throw CorruptSnapshot("delta: bad edge line");
    Weight inc = 0;
    try {
      inc = static_cast<Weight>(std::stoull(parts[2]));
    } catch (const std::exception&) {
      throw CorruptSnapshot("delta: bad increment");
    }
    if (inc == 0) throw CorruptSnapshot("delta: zero increment");
    d.add_edge(parts[0], parts[1], inc);
  }
  return d;
}

}  // namespace fundgraph
