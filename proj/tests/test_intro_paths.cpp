#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fundgraph/errors.hpp"
#include "fundgraph/intro_paths.hpp"
#include "fundgraph/util.hpp"
#include "oracles.hpp"

using namespace fundgraph;

namespace {

// founder f, investor i, two 2-hop routes of different strength
CommGraph two_route_graph() {
  CommGraph g;
  g.add_edge_weight("f", "m1", 4);
  g.add_edge_weight("m1", "i", 5);   // strength 9
  g.add_edge_weight("f", "m2", 1);
  g.add_edge_weight("i", "m2", 3);   // strength 4, mixed directions
  return g;
}

}  // namespace

TEST_CASE("adjacent founder and investor") {
  CommGraph g;
  g.add_edge_weight("f", "i", 7);
  const auto paths = top_intro_paths(g, "f", "i");
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].nodes == std::vector<NodeId>{"f", "i"});
  CHECK(paths[0].total_strength == 7);
  CHECK(paths[0].hops() == 1);
}

TEST_CASE("two routes ranked by strength") {
  const auto paths = top_intro_paths(two_route_graph(), "f", "i");
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].nodes == std::vector<NodeId>{"f", "m1", "i"});
  CHECK(paths[0].total_strength == 9);
  CHECK(paths[1].nodes == std::vector<NodeId>{"f", "m2", "i"});
  CHECK(paths[1].total_strength == 4);
}

TEST_CASE("undirected traversal uses edges either direction") {
  CommGraph g;
  g.add_edge_weight("i", "f", 2);  // only an incoming edge
  const auto paths = top_intro_paths(g, "f", "i");
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].total_strength == 2);
}

TEST_CASE("max hops bounds the search") {
  CommGraph g;  // f - a - b - c - d - i  (5 hops)
  g.add_edge_weight("f", "a", 1);
  g.add_edge_weight("a", "b", 1);
  g.add_edge_weight("b", "c", 1);
  g.add_edge_weight("c", "d", 1);
  g.add_edge_weight("d", "i", 1);
  CHECK(top_intro_paths(g, "f", "i", 4, 3).empty());
  CHECK(top_intro_paths(g, "f", "i", 5, 3).size() == 1);
}

TEST_CASE("only minimum-hop paths are considered") {
  CommGraph g = two_route_graph();
  // add a massive-strength 3-hop detour; it must not displace 2-hop paths
  g.add_edge_weight("f", "d1", 100);
  g.add_edge_weight("d1", "d2", 100);
  g.add_edge_weight("d2", "i", 100);
  const auto paths = top_intro_paths(g, "f", "i");
  for (const IntroPath& p : paths) CHECK(p.hops() == 2);
}

TEST_CASE("unknown nodes and degenerate queries") {
  CommGraph g = two_route_graph();
  CHECK_THROWS_AS(top_intro_paths(g, "ghost", "i"), UnknownNode);
  CHECK_THROWS_AS(top_intro_paths(g, "f", "ghost"), UnknownNode);
  CHECK_THROWS_AS(top_intro_paths(g, "f", "f"), InvalidInput);
}

TEST_CASE("strength equals the recomputed edge sum") {
  Rng rng(60);
  for (int trial = 0; trial < 20; ++trial) {
    const CommGraph g = oracle::random_graph(rng, 14, 0.18);
    const auto view = g.indexed();
    const NodeId from = view.ids[0];
    const NodeId to = view.ids[view.size() - 1];
    if (from == to) continue;
    for (const IntroPath& p : top_intro_paths(g, from, to)) {
      Weight sum = 0;
      for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
        sum += g.pair_strength(p.nodes[i], p.nodes[i + 1]);
      }
      CHECK(p.total_strength == sum);
      // no repeated nodes
      std::set<NodeId> unique(p.nodes.begin(), p.nodes.end());
      CHECK(unique.size() == p.nodes.size());
    }
  }
}

TEST_CASE("matches the exhaustive enumeration oracle") {
  Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 6 + rng.next_below(13);
    const CommGraph g = oracle::random_graph(rng, n, 0.15);
    const auto view = g.indexed();
    const NodeId from = view.ids[rng.next_below(view.size())];
    const NodeId to = view.ids[rng.next_below(view.size())];
    if (from == to) continue;

    const auto got = top_intro_paths(g, from, to, 4, 3);
    const auto expected = oracle::enumerate_intro_paths(g, from, to, 4, 3);
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].nodes == expected[i].nodes);
      CHECK(got[i].total_strength == expected[i].total_strength);
    }
  }
}

TEST_CASE("firm paths") {
  CommGraph g = two_route_graph();
  g.add_edge_weight("m1", "j", 1);  // second investor j at 2 hops via m1...
  g.add_edge_weight("x", "j", 9);
  g.add_edge_weight("f", "x", 9);   // j reachable in 2 hops, strength 18

  SUBCASE("single investor reduces to top_intro_paths") {
    const auto firm = firm_intro_paths(g, "f", {"i"});
    const auto single = top_intro_paths(g, "f", "i");
    REQUIRE(firm.size() == single.size());
    for (std::size_t i = 0; i < firm.size(); ++i) {
      CHECK(firm[i].nodes == single[i].nodes);
    }
  }
  SUBCASE("union re-ranked by hops then strength") {
    CommGraph h;
    h.add_edge_weight("f", "near", 1);     // investor at 1 hop, strength 1
    h.add_edge_weight("f", "mid", 50);
    h.add_edge_weight("mid", "far", 50);   // investor at 2 hops, strength 100
    const auto paths = firm_intro_paths(h, "f", {"near", "far"});
    REQUIRE(paths.size() == 2);
    CHECK(paths[0].nodes.back() == "near");  // fewer hops wins despite strength
    CHECK(paths[1].nodes.back() == "far");
  }
  SUBCASE("unreachable firm is empty") {
    CommGraph h;
    h.add_edge_weight("f", "a", 1);
    h.add_node("island");
    CHECK(firm_intro_paths(h, "f", {"island"}).empty());
  }
  SUBCASE("truncates to k") {
    const auto paths = firm_intro_paths(g, "f", {"i", "j"}, 4, 2);
    CHECK(paths.size() <= 2);
  }
}
