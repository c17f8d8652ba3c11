#include <doctest.h>

#include <liprange/graph.hpp>
#include <liprange/rng.hpp>

#include <numeric>
#include <set>

#include "test_util.hpp"

using namespace lip;

TEST_CASE("layered cycle basic shape") {
  for (int n : {4, 6, 8})
    for (int k : {1, 2, 3}) {
      Graph g = build_layered_cycle(n, k);
      CHECK(g.vertex_count() == n * k);
      for (int v = 0; v < g.vertex_count(); ++v) CHECK(g.degree(v) == 2 * k);
      CHECK(g.is_connected());
      CHECK(g.is_bipartite());
      // no within-layer edges
      for (int layer = 0; layer < n; ++layer)
        for (int a = 0; a < k; ++a)
          for (int b = a + 1; b < k; ++b) CHECK(!g.has_edge(layer * k + a, layer * k + b));
    }
}

TEST_CASE("layered cycle rejects bad parameters") {
  CHECK_THROWS_AS(build_layered_cycle(5, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_layered_cycle(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_layered_cycle(4, 0), std::invalid_argument);
}

TEST_CASE("from_edges validation") {
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2}}), std::invalid_argument);
  Graph g = Graph::from_edges(3, {{0, 1}, {1, 0}, {1, 2}});  // parallel collapses
  CHECK(g.edge_count() == 2);
}

TEST_CASE("bfs distances on the layered cycle") {
  Graph g = build_layered_cycle(8, 2);
  auto dist = bfs_distances(g, 0);
  for (int layer = 0; layer < 8; ++layer)
    for (int a = 0; a < 2; ++a) {
      int expected = std::min(layer, 8 - layer);
      if (layer == 0 && a != 0) expected = 2;  // same layer, via a neighbor layer
      CHECK(dist[layer * 2 + a] == expected);
    }
  Graph disconnected = Graph::from_edges(3, {{0, 1}});
  CHECK_THROWS_WITH_AS(bfs_distances(disconnected, 0),
                       "graph is disconnected: vertex 2 unreachable from 0", std::runtime_error);
}

TEST_CASE("ball layers partition the ball, L_0 is the boundary") {
  Substream rng(11, "ball_test");
  for (int rep = 0; rep < 20; ++rep) {
    Graph g = liptest::random_connected_graph(rng, 30, 20);
    int center = static_cast<int>(rng.next_below(30));
    int radius = 1 + static_cast<int>(rng.next_below(3));
    auto b = ball(g, center, radius);
    auto dist = bfs_distances(g, center);
    std::set<int> seen;
    for (int i = 0; i <= radius; ++i)
      for (int v : b.layers[i]) {
        CHECK(dist[v] == radius - i);
        CHECK(seen.insert(v).second);  // layers are disjoint
      }
    for (int v = 0; v < g.vertex_count(); ++v)
      CHECK(seen.count(v) == (dist[v] <= radius ? 1u : 0u));
    CHECK(b.exact_radius == !b.boundary().empty());
    CHECK(b.layers[radius] == std::vector<int>{center});
  }
}

TEST_CASE("pack_disjoint_balls produces disjoint exact-radius balls") {
  Substream rng(12, "pack_test");
  for (int rep = 0; rep < 10; ++rep) {
    Graph g = liptest::random_connected_graph(rng, 40, 15);
    int radius = 1 + static_cast<int>(rng.next_below(2));
    std::vector<int> all(g.vertex_count());
    std::iota(all.begin(), all.end(), 0);
    auto centers = pack_disjoint_balls(g, all, radius);
    std::set<int> used;
    for (int u : centers) {
      auto b = ball(g, u, radius);
      CHECK(b.exact_radius);
      for (int v : b.vertices()) CHECK(used.insert(v).second);
    }
    // |U| >= floor(|W| / m^2) with m the max ball size
    const int m = max_ball_size(g, radius);
    CHECK(static_cast<int>(centers.size()) >=
          g.vertex_count() / (m * m));
  }
}

TEST_CASE("choose_radius on the long cycle") {
  Graph g = build_layered_cycle(1024, 1);
  // ball of radius r has 2r+1 vertices; budget c*log2(1024) = 10 allows
  // radius-4 balls (9 vertices) but not radius-5 (11), so r = 5 is the
  // largest with B_{r-1} within budget.
  CHECK(choose_radius(g, 1.0) == 5);
  CHECK(choose_radius(g, 0.05) == 0);  // even singletons exceed the budget
  Graph k2 = Graph::from_edges(2, {{0, 1}});
  CHECK(choose_radius(k2, 10.0) == 2);  // balls saturate at the whole graph
}
