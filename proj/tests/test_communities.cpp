#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <deque>

#include "fundgraph/communities.hpp"
#include "fundgraph/errors.hpp"
#include "fundgraph/util.hpp"
#include "oracles.hpp"

using namespace fundgraph;

namespace {

CommGraph two_triangles() {
  CommGraph g;
  g.add_edge_weight("a1", "a2", 1);
  g.add_edge_weight("a2", "a3", 1);
  g.add_edge_weight("a3", "a1", 1);
  g.add_edge_weight("b1", "b2", 1);
  g.add_edge_weight("b2", "b3", 1);
  g.add_edge_weight("b3", "b1", 1);
  return g;
}

// BFS inside one community over undirected edges restricted to members
bool community_connected(const CommGraph& g, const std::set<NodeId>& members) {
  if (members.empty()) return true;
  const IndexedView v = g.indexed();
  std::set<NodeId> seen = {*members.begin()};
  std::deque<NodeId> queue = {*members.begin()};
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (std::size_t w : v.undirected[v.index_of(u)]) {
      const NodeId& id = v.ids[w];
      if (members.count(id) && !seen.count(id)) {
        seen.insert(id);
        queue.push_back(id);
      }
    }
  }
  return seen.size() == members.size();
}

}  // namespace

TEST_CASE("two disjoint triangles become two communities") {
  const Partition p = label_propagation(two_triangles(), 1);
  CHECK(p.communities.size() == 2);
  CHECK(p.assignment.at("a1") == p.assignment.at("a2"));
  CHECK(p.assignment.at("a2") == p.assignment.at("a3"));
  CHECK(p.assignment.at("b1") == p.assignment.at("b2"));
  CHECK(p.assignment.at("a1") != p.assignment.at("b1"));
}

TEST_CASE("single node forms one community") {
  CommGraph g;
  g.add_node("solo");
  const Partition p = label_propagation(g, 0);
  CHECK(p.communities.size() == 1);
  CHECK(p.assignment.at("solo") == "solo");
}

TEST_CASE("empty graph gives empty partition") {
  const Partition p = label_propagation(CommGraph{}, 0);
  CHECK(p.assignment.empty());
  CHECK(p.communities.empty());
}

TEST_CASE("community ids are canonical smallest members") {
  const Partition p = label_propagation(two_triangles(), 7);
  for (const auto& [community, members] : p.communities) {
    CHECK(community == *members.begin());
    for (const NodeId& m : members) CHECK(p.assignment.at(m) == community);
  }
}

TEST_CASE("fixed seed reproduces the partition") {
  Rng rng(5);
  const CommGraph g = oracle::random_graph(rng, 40, 0.08);
  const Partition a = label_propagation(g, 123);
  const Partition b = label_propagation(g, 123);
  CHECK(a.assignment == b.assignment);
}

TEST_CASE("separate weak components never merge") {
  Rng rng(6);
  for (int trial = 0; trial < 8; ++trial) {
    // two random graphs glued into one node set without cross edges
    CommGraph g = oracle::random_graph(rng, 10, 0.25);
    const CommGraph extra = oracle::random_graph(rng, 8, 0.3);
    for (const auto& [id, flags] : extra.nodes()) g.add_node("x" + id, flags);
    for (const auto& [src, targets] : extra.out_edges()) {
      for (const auto& [dst, w] : targets) g.add_edge_weight("x" + src, "x" + dst, w);
    }
    const std::map<NodeId, int> components = oracle::weak_components(g);
    for (std::uint64_t seed : {1ULL, 9ULL, 77ULL}) {
      const Partition p = label_propagation(g, seed);
      for (const auto& [u, cu] : p.assignment) {
        for (const auto& [v, cv] : p.assignment) {
          if (cu == cv) CHECK(components.at(u) == components.at(v));
        }
      }
    }
  }
}

TEST_CASE("communities are internally connected") {
  Rng rng(8);
  for (int trial = 0; trial < 6; ++trial) {
    const CommGraph g = oracle::random_graph(rng, 25, 0.12);
    const Partition p = label_propagation(g, 500 + static_cast<std::uint64_t>(trial));
    for (const auto& [community, members] : p.communities) {
      CHECK(community_connected(g, members));
    }
  }
}

TEST_CASE("louvain honours the same contract") {
  const Partition p = louvain(two_triangles(), 3);
  CHECK(p.communities.size() == 2);
  for (const auto& [community, members] : p.communities) {
    CHECK(community == *members.begin());
  }
  CHECK(louvain(CommGraph{}, 0).assignment.empty());

  Rng rng(19);
  const CommGraph g = oracle::random_graph(rng, 30, 0.1);
  const Partition a = louvain(g, 11);
  const Partition b = louvain(g, 11);
  CHECK(a.assignment == b.assignment);

  const std::map<NodeId, int> components = oracle::weak_components(g);
  for (const auto& [u, cu] : a.assignment) {
    for (const auto& [v, cv] : a.assignment) {
      if (cu == cv) CHECK(components.at(u) == components.at(v));
    }
  }
}

TEST_CASE("louvain separates two bridged cliques") {
  // two K5 cliques joined by a single edge: modularity clearly splits them
  CommGraph g;
  const auto clique = [&](const std::string& prefix) {
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) {
        g.add_edge_weight(prefix + std::to_string(i), prefix + std::to_string(j), 1);
      }
    }
  };
  clique("a");
  clique("b");
  g.add_edge_weight("a0", "b0", 1);

  const Partition p = louvain(g, 2);
  CHECK(p.communities.size() == 2);
  CHECK(p.assignment.at("a1") == p.assignment.at("a4"));
  CHECK(p.assignment.at("b1") == p.assignment.at("b4"));
  CHECK(p.assignment.at("a1") != p.assignment.at("b1"));
}

TEST_CASE("community_stats") {
  CommGraph labels;
  LabelFlags founder;
  founder.founder = true;
  labels.add_node("f1", founder);
  labels.add_node("f2", founder);
  labels.add_node("f3", founder);

  SUBCASE("two communities of founders") {
    const Partition p = Partition::canonicalize(
        {{"f1", "f1"}, {"f2", "f1"}, {"f3", "f3"}});
    const CommunityStats stats = community_stats(p, labels);
    CHECK(stats.community_count == 2);
    CHECK(stats.mean_founders_per_community == doctest::Approx(1.5));
    REQUIRE(!stats.top_by_founders.empty());
    CHECK(stats.top_by_founders[0].first == "f1");
    CHECK(stats.top_by_founders[0].second == 2);
  }
  SUBCASE("no founders anywhere") {
    CommGraph persons;
    persons.add_node("p1");
    persons.add_node("p2");
    const Partition p = Partition::canonicalize({{"p1", "p1"}, {"p2", "p1"}});
    CHECK(community_stats(p, persons).mean_founders_per_community == doctest::Approx(0.0));
  }
  SUBCASE("one community of four founders tops the list") {
    labels.add_node("f4", founder);
    const Partition p = Partition::canonicalize(
        {{"f1", "f1"}, {"f2", "f1"}, {"f3", "f1"}, {"f4", "f1"}});
    const CommunityStats stats = community_stats(p, labels, 1);
    REQUIRE(stats.top_by_founders.size() == 1);
    CHECK(stats.top_by_founders[0].second == 4);
  }
  SUBCASE("partition nodes must be labeled") {
    const Partition p = Partition::canonicalize({{"ghost", "ghost"}});
    CHECK_THROWS_AS(community_stats(p, labels), UnknownNode);
  }
}
