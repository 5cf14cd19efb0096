#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fundgraph/centrality.hpp"
#include "fundgraph/errors.hpp"
#include "fundgraph/util.hpp"
#include "oracles.hpp"

using namespace fundgraph;

namespace {

CommGraph directed_cycle(int n) {
  CommGraph g;
  for (int i = 0; i < n; ++i) {
    g.add_edge_weight("n" + std::to_string(i), "n" + std::to_string((i + 1) % n), 1);
  }
  return g;
}

}  // namespace

TEST_CASE("pagerank on a directed 4-cycle is uniform") {
  const auto scores = pagerank(directed_cycle(4));
  double sum = 0;
  for (const auto& [id, s] : scores) {
    CHECK(s == doctest::Approx(0.25).epsilon(1e-9));
    sum += s;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("pagerank star matches the dense solve") {
  CommGraph g;
  g.add_edge_weight("leaf1", "hub", 1);
  g.add_edge_weight("leaf2", "hub", 1);
  g.add_edge_weight("leaf3", "hub", 1);
  const auto iterative = pagerank(g);
  const auto dense = oracle::pagerank_dense(g, 0.85);
  for (const auto& [id, s] : iterative) {
    CHECK(s == doctest::Approx(dense.at(id)).epsilon(1e-8));
  }
}

TEST_CASE("pagerank single dangling node scores 1") {
  CommGraph g;
  g.add_node("only");
  const auto scores = pagerank(g);
  CHECK(scores.at("only") == doctest::Approx(1.0));
}

TEST_CASE("pagerank rejects bad parameters") {
  PageRankOptions opts;
  opts.damping = 1.0;
  CHECK_THROWS_AS(pagerank(directed_cycle(3), opts), InvalidInput);
  opts.damping = 0.85;
  opts.max_iterations = 1;
  opts.tolerance = 1e-15;
  Rng rng(5);
  CHECK_THROWS_AS(pagerank(oracle::random_graph(rng, 20, 0.2), opts), NonConvergence);
}

TEST_CASE("betweenness of a directed path") {
  CommGraph g;
  g.add_edge_weight("a", "b", 1);
  g.add_edge_weight("b", "c", 1);
  const auto scores = betweenness(g);
  // raw 1 for the middle node, normalized by (3-1)(3-2) = 2
  CHECK(scores.at("b") == doctest::Approx(0.5));
  CHECK(scores.at("a") == doctest::Approx(0.0));
  CHECK(scores.at("c") == doctest::Approx(0.0));
}

TEST_CASE("betweenness of complete digraph on 3 nodes is zero") {
  CommGraph g;
  const std::vector<NodeId> ids = {"a", "b", "c"};
  for (const NodeId& u : ids) {
    for (const NodeId& v : ids) {
      if (u != v) g.add_edge_weight(u, v, 1);
    }
  }
  for (const auto& [id, s] : betweenness(g)) CHECK(s == doctest::Approx(0.0));
}

TEST_CASE("betweenness ignores isolated nodes") {
  CommGraph g;
  g.add_edge_weight("a", "b", 1);
  g.add_edge_weight("b", "c", 1);
  g.add_node("lonely");
  CHECK(betweenness(g).at("lonely") == doctest::Approx(0.0));
}

TEST_CASE("closeness examples") {
  SUBCASE("bidirectional star center is 1") {
    CommGraph g;
    for (const char* leaf : {"x", "y", "z"}) {
      g.add_edge_weight("hub", leaf, 1);
      g.add_edge_weight(leaf, "hub", 1);
    }
    CHECK(closeness(g).at("hub") == doctest::Approx(1.0));
  }
  SUBCASE("no outgoing reach means 0") {
    CommGraph g;
    g.add_edge_weight("a", "b", 1);
    CHECK(closeness(g).at("b") == doctest::Approx(0.0));
  }
  SUBCASE("directed path start") {
    CommGraph g;
    g.add_edge_weight("a", "b", 1);
    g.add_edge_weight("b", "c", 1);
    CHECK(closeness(g).at("a") == doctest::Approx(0.75));  // (1/2)(1 + 1/2)
  }
}

TEST_CASE("scale_unit") {
  CHECK(scale_unit({{"a", 2.0}, {"b", 4.0}, {"c", 6.0}}) ==
        std::map<NodeId, double>{{"a", 0.0}, {"b", 0.5}, {"c", 1.0}});
  CHECK(scale_unit({{"a", 5.0}, {"b", 5.0}}) ==
        std::map<NodeId, double>{{"a", 0.0}, {"b", 0.0}});
  const auto scaled = scale_unit({{"a", -1.0}, {"b", 0.0}, {"c", 3.0}});
  CHECK(scaled.at("a") == doctest::Approx(0.0));
  CHECK(scaled.at("b") == doctest::Approx(0.25));
  CHECK(scaled.at("c") == doctest::Approx(1.0));
  CHECK_THROWS_AS(scale_unit({}), InvalidInput);
}

TEST_CASE("metrics match oracles on random graphs") {
  Rng rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 5 + rng.next_below(20);
    const CommGraph g = oracle::random_graph(rng, n, 0.15);

    const auto pr = pagerank(g);
    const auto pr_oracle = oracle::pagerank_dense(g, 0.85);
    const auto bt = betweenness(g);
    const auto bt_oracle = oracle::betweenness_enumerated(g);
    const auto cl = closeness(g);
    const auto cl_oracle = oracle::closeness_floyd(g);
    for (const auto& [id, s] : pr) {
      CHECK(s == doctest::Approx(pr_oracle.at(id)).epsilon(1e-8));
      CHECK(bt.at(id) == doctest::Approx(bt_oracle.at(id)).epsilon(1e-9));
      CHECK(cl.at(id) == doctest::Approx(cl_oracle.at(id)).epsilon(1e-9));
    }
  }
}

TEST_CASE("pagerank sums to one pre-scaling") {
  Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const CommGraph g = oracle::random_graph(rng, 30, 0.1);
    double sum = 0;
    for (const auto& [id, s] : pagerank(g)) sum += s;
    CHECK(std::fabs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("metrics are invariant under node relabeling") {
  Rng rng(31);
  const CommGraph g = oracle::random_graph(rng, 15, 0.2);

  // permute ids: n### -> m### reversed index
  std::map<NodeId, NodeId> rename;
  const auto view = g.indexed();
  for (std::size_t i = 0; i < view.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "m%03zu", view.size() - 1 - i);
    rename[view.ids[i]] = buf;
  }
  CommGraph h;
  for (const auto& [id, flags] : g.nodes()) h.add_node(rename.at(id), flags);
  for (const auto& [src, targets] : g.out_edges()) {
    for (const auto& [dst, w] : targets) h.add_edge_weight(rename.at(src), rename.at(dst), w);
  }

  const auto metrics_g = compute_metrics(g);
  const auto metrics_h = compute_metrics(h);
  std::map<NodeId, NodeMetrics> by_id;
  for (const NodeMetrics& m : metrics_h) by_id[m.node_id] = m;
  for (const NodeMetrics& m : metrics_g) {
    const NodeMetrics& other = by_id.at(rename.at(m.node_id));
    CHECK(m.pagerank_raw == doctest::Approx(other.pagerank_raw).epsilon(1e-10));
    CHECK(m.betweenness_raw == doctest::Approx(other.betweenness_raw).epsilon(1e-10));
    CHECK(m.closeness_raw == doctest::Approx(other.closeness_raw).epsilon(1e-10));
  }
}

TEST_CASE("betweenness and pagerank correlate on preferential-attachment graphs") {
  // build a 200-node preferential attachment graph by hand
  Rng rng(11);
  CommGraph g;
  std::vector<NodeId> ids;
  std::vector<std::size_t> degree;
  for (int i = 0; i < 200; ++i) {
    ids.push_back("n" + std::to_string(1000 + i));
    g.add_node(ids.back());
    degree.push_back(0);
  }
  for (std::size_t j = 1; j < ids.size(); ++j) {
    const std::size_t attach = std::min<std::size_t>(j, 3);
    std::set<std::size_t> chosen;
    while (chosen.size() < attach) {
      std::uint64_t total = 0;
      for (std::size_t t = 0; t < j; ++t) total += degree[t] + 1;
      std::uint64_t pick = rng.next_below(total);
      std::size_t t = 0;
      for (; t < j; ++t) {
        const std::uint64_t mass = degree[t] + 1;
        if (pick < mass) break;
        pick -= mass;
      }
      chosen.insert(t);
    }
    for (std::size_t t : chosen) {
      if (rng.next_below(2) == 0) {
        g.add_edge_weight(ids[j], ids[t], 1);
      } else {
        g.add_edge_weight(ids[t], ids[j], 1);
      }
      ++degree[j];
      ++degree[t];
    }
  }

  const auto pr = pagerank(g);
  const auto bt = betweenness(g);
  double mean_x = 0, mean_y = 0;
  for (const NodeId& id : ids) {
    mean_x += pr.at(id);
    mean_y += bt.at(id);
  }
  mean_x /= static_cast<double>(ids.size());
  mean_y /= static_cast<double>(ids.size());
  double cov = 0, vx = 0, vy = 0;
  for (const NodeId& id : ids) {
    const double dx = pr.at(id) - mean_x;
    const double dy = bt.at(id) - mean_y;
    cov += dx * dy;
    vx += dx * dx;
    vy += dy * dy;
  }
  const double pearson = cov / std::sqrt(vx * vy);
  CHECK(pearson > 0.7);
}
