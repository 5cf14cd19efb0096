#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fundgraph/errors.hpp"
#include "fundgraph/graph.hpp"
#include "fundgraph/util.hpp"

using namespace fundgraph;

namespace {

CommGraph path_graph() {  // a -> b -> c plus isolated d
  CommGraph g;
  g.add_edge_weight("a", "b", 1);
  g.add_edge_weight("b", "c", 2);
  g.add_node("d");
  return g;
}

}  // namespace

TEST_CASE("resolve_label") {
  CHECK(resolve_label(true, true, true) == NodeLabel::Investor);
  CHECK(resolve_label(true, true, false) == NodeLabel::Founder);
  CHECK(resolve_label(true, false, false) == NodeLabel::Founder);
  CHECK(resolve_label(false, true, false) == NodeLabel::Investor);
  CHECK(resolve_label(false, false, false) == NodeLabel::Person);
  // employment only matters when both flags are set
  CHECK(resolve_label(false, false, true) == NodeLabel::Person);
  CHECK(resolve_label(true, false, true) == NodeLabel::Founder);
}

TEST_CASE("apply_delta") {
  CommGraph g;
  g.add_edge_weight("a", "b", 3);

  SUBCASE("empty delta is identity") {
    CHECK(apply_delta(g, GraphDelta{}) == g);
  }
  SUBCASE("weights sum") {
    GraphDelta d;
    d.add_edge("a", "b", 2);
    const CommGraph g2 = apply_delta(g, d);
    CHECK(g2.edge_weight("a", "b") == 5);
  }
  SUBCASE("new nodes arrive as Person with zero degree") {
    GraphDelta d;
    d.add_label("c", LabelFlags{});
    const CommGraph g2 = apply_delta(g, d);
    CHECK(g2.has_node("c"));
    CHECK(g2.label("c") == NodeLabel::Person);
    CHECK(g2.in_degree("c") == 0);
    CHECK(g2.out_degree("c") == 0);
  }
  SUBCASE("total weight adds up") {
    GraphDelta d;
    d.add_edge("a", "b", 2);
    d.add_edge("b", "c", 7);
    CHECK(apply_delta(g, d).total_weight() == g.total_weight() + 9);
  }
}

TEST_CASE("delta merge is associative and commutative") {
  GraphDelta a, b;
  a.add_edge("x", "y", 1);
  b.add_edge("x", "y", 2);
  b.add_edge("y", "z", 1);

  GraphDelta ab = a;
  ab.merge(b);
  GraphDelta ba = b;
  ba.merge(a);
  CHECK(ab.edge_increments == ba.edge_increments);
}

TEST_CASE("self-loops are rejected") {
  CommGraph g;
  CHECK_THROWS_AS(g.add_edge_weight("a", "a", 1), InvalidInput);
  GraphDelta d;
  CHECK_THROWS_AS(d.add_edge("a", "a", 1), InvalidInput);
}

TEST_CASE("remove_orphans") {
  SUBCASE("isolated node dropped, edges untouched") {
    const CommGraph g2 = remove_orphans(path_graph());
    CHECK(g2.node_count() == 3);
    CHECK_FALSE(g2.has_node("d"));
    CHECK(g2.edge_weight("b", "c") == 2);
  }
  SUBCASE("no orphans means unchanged") {
    CommGraph g;
    g.add_edge_weight("a", "b", 1);
    CHECK(remove_orphans(g) == g);
  }
  SUBCASE("all-orphan graph empties") {
    CommGraph g;
    g.add_node("a");
    g.add_node("b");
    CHECK(remove_orphans(g).node_count() == 0);
  }
  SUBCASE("idempotent") {
    const CommGraph once = remove_orphans(path_graph());
    CHECK(remove_orphans(once) == once);
  }
}

TEST_CASE("snapshot round-trip") {
  CommGraph g = path_graph();
  LabelFlags founder;
  founder.founder = true;
  LabelFlags employed_both;
  employed_both.founder = true;
  employed_both.investor = true;
  employed_both.employed_by_fund = true;
  g.merge_flags("a", founder);
  g.merge_flags("b", employed_both);

  const std::string snapshot = save_snapshot(g);
  const CommGraph loaded = load_snapshot(snapshot);
  CHECK(loaded == g);
  CHECK(loaded.label("b") == NodeLabel::Investor);
  CHECK(loaded.edge_weight("b", "c") == 2);

  SUBCASE("truncation is corrupt") {
    CHECK_THROWS_AS(load_snapshot(snapshot.substr(0, snapshot.size() / 2)), CorruptSnapshot);
  }
  SUBCASE("unknown version is rejected") {
    std::string bumped = snapshot;
    bumped.replace(bumped.find("v1"), 2, "v9");
    CHECK_THROWS_AS(load_snapshot(bumped), UnsupportedVersion);
  }
  SUBCASE("garbage is corrupt") {
    CHECK_THROWS_AS(load_snapshot("not a snapshot\n"), CorruptSnapshot);
  }
}

TEST_CASE("delta round-trip") {
  GraphDelta d;
  d.add_edge("a", "b", 2);
  d.add_edge("b", "c", 1);
  LabelFlags f;
  f.investor = true;
  d.add_label("c", f);
  const GraphDelta loaded = load_delta(save_delta(d));
  CHECK(loaded.edge_increments == d.edge_increments);
  CHECK(loaded.new_labels == d.new_labels);
}

TEST_CASE("label exclusivity under random delta sequences") {
  Rng rng(99);
  CommGraph g;
  const std::vector<NodeId> pool = {"a", "b", "c", "d", "e"};
  for (int step = 0; step < 200; ++step) {
    GraphDelta d;
    const NodeId& src = pool[rng.next_below(pool.size())];
    const NodeId& dst = pool[rng.next_below(pool.size())];
    if (src != dst) d.add_edge(src, dst, 1 + rng.next_below(3));
    LabelFlags f;
    f.founder = rng.next_below(2) == 0;
    f.investor = rng.next_below(2) == 0;
    f.employed_by_fund = rng.next_below(2) == 0;
    d.add_label(pool[rng.next_below(pool.size())], f);
    g = apply_delta(g, d);

    for (const auto& [id, flags] : g.nodes()) {
      const NodeLabel label = g.label(id);
      // Founder and Investor are mutually exclusive by construction
      CHECK((label == NodeLabel::Person || label == NodeLabel::Founder ||
             label == NodeLabel::Investor));
    }
  }
}

TEST_CASE("degree outlier trimming stays disabled by default semantics") {
  CommGraph g;
  // hub with 10 spokes plus one ordinary edge
  for (int i = 0; i < 10; ++i) {
    g.add_edge_weight("hub", "s" + std::to_string(i), 1);
  }
  g.add_edge_weight("s0", "s1", 1);
  const CommGraph trimmed = remove_degree_outliers(g, 90.0);
  CHECK_FALSE(trimmed.has_node("hub"));
  CHECK(trimmed.has_node("s0"));
  CHECK_THROWS_AS(remove_degree_outliers(g, 0.0), InvalidInput);
}
