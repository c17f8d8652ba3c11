#include <doctest.h>

#include <liprange/constructions.hpp>

using namespace lip;

namespace {

// validity of a partial assignment on the edges inside its domain
bool ball_lipschitz(const Graph& g, const PartialAssignment& f, std::int64_t M) {
  for (const auto& [v, value] : f)
    for (int w : g.neighbors(v)) {
      if (w < v || !f.count(w)) continue;
      if (std::llabs(value - f.at(w)) > M) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("high-set decomposition on a hand-built cycle ball") {
  Graph c8 = build_layered_cycle(8, 1);
  auto b = ball(c8, 0, 2);  // {6,7,0,1,2}, boundary {2,6}
  REQUIRE(b.exact_radius);
  REQUIRE(b.boundary() == std::vector<int>{2, 6});

  PartialAssignment f{{6, 0}, {7, 2}, {0, 2}, {1, 2}, {2, 0}};
  auto dec = high_set_decomposition(c8, b, f, 2);
  CHECK(dec.high_set == std::vector<int>{1, 7});  // layer-1 vertices at >= M
  CHECK(dec.q_star.empty());
  CHECK(dec.frozen == std::vector<int>{1, 2, 6, 7});
}

TEST_CASE("high extension intervals") {
  CHECK(high_extension_interval(2, 1) == std::pair<std::int64_t, std::int64_t>{1, 1});
  CHECK(high_extension_interval(2, 2) == std::pair<std::int64_t, std::int64_t>{2, 2});
  CHECK(high_extension_interval(5, 1) == std::pair<std::int64_t, std::int64_t>{3, 4});
  CHECK(high_extension_interval(5, 2) == std::pair<std::int64_t, std::int64_t>{5, 7});
  // at least (M-1)/2 integer choices per free vertex
  for (std::int64_t M = 2; M <= 9; ++M)
    for (int i = 1; i <= 4; ++i) {
      auto [lo, hi] = high_extension_interval(M, i);
      CHECK(2 * (hi - lo + 1) >= M - 1);
    }
}

TEST_CASE("generate_high_extensions on the hand-built instance") {
  Graph c8 = build_layered_cycle(8, 1);
  auto b = ball(c8, 0, 2);
  PartialAssignment f{{6, 0}, {7, 1}, {0, 2}, {1, 1}, {2, 0}};
  auto family = generate_high_extensions(c8, b, f, 2, 10);
  // A and Q* empty; free = {7,0,1} with singleton intervals -> exactly one
  // extension, the layer-index function itself
  CHECK(family.decomposition.high_set.empty());
  CHECK(family.free_vertices == std::vector<int>{1, 7, 0});  // sorted by (layer, id)
  CHECK(family.family_size == 1);
  REQUIRE(family.functions.size() == 1);
  const auto& h = family.functions[0];
  CHECK(h.at(0) == 2);
  CHECK(h.at(7) == 1);
  CHECK(h.at(2) == 0);
  CHECK(ball_lipschitz(c8, h, 2));
}

TEST_CASE("family size multiplies interval widths") {
  Graph c8 = build_layered_cycle(8, 1);
  auto b = ball(c8, 0, 2);
  PartialAssignment f{{6, 0}, {7, 1}, {0, 2}, {1, 1}, {2, 0}};
  auto family = generate_high_extensions(c8, b, f, 5, 1000);
  // M=5: layer-1 interval [3,4] (2 choices each), layer-2 [5,7] (3 choices)
  CHECK(family.family_size == 12);
  CHECK(family.functions.size() == 12);
  for (const auto& h : family.functions) {
    CHECK(ball_lipschitz(c8, h, 5));
    CHECK(h.at(2) == 0);  // boundary kept
    CHECK(h.at(6) == 0);
    std::int64_t top = 0;
    for (const auto& [v, value] : h) top = std::max(top, value);
    CHECK(2 * top >= 5 * 2);  // max >= Mr/2
  }
}

TEST_CASE("input validation errors") {
  Graph c8 = build_layered_cycle(8, 1);
  auto b = ball(c8, 0, 2);
  PartialAssignment shifted{{6, 1}, {7, 2}, {0, 3}, {1, 2}, {2, 1}};
  CHECK_THROWS_WITH_AS(high_set_decomposition(c8, b, shifted, 2),
                       "boundary not normalized: translate f so that min over the boundary is 0",
                       std::invalid_argument);
  PartialAssignment missing{{6, 0}, {7, 1}, {0, 2}, {1, 1}};
  CHECK_THROWS_AS(high_set_decomposition(c8, b, missing, 2), std::invalid_argument);
  PartialAssignment steep{{6, 0}, {7, 5}, {0, 2}, {1, 1}, {2, 0}};
  CHECK_THROWS_AS(high_set_decomposition(c8, b, steep, 2), std::invalid_argument);
  PartialAssignment ok{{6, 0}, {7, 1}, {0, 2}, {1, 1}, {2, 0}};
  CHECK_THROWS_AS(generate_high_extensions(c8, b, ok, 1, 10), std::invalid_argument);  // M=1
}

TEST_CASE("lift_one_lipschitz pushes the center to the radius") {
  Graph c8 = build_layered_cycle(8, 1);
  auto b = ball(c8, 0, 2);
  PartialAssignment f{{6, 0}, {7, 0}, {0, 0}, {1, 1}, {2, 2}};
  auto h = lift_one_lipschitz(c8, b, f);
  CHECK(h.at(0) == 2);
  CHECK(h.at(7) == 1);
  CHECK(h.at(6) == 0);  // boundary fixed
  CHECK(h.at(2) == 2);
  CHECK(ball_lipschitz(c8, h, 1));
  PartialAssignment negative{{6, 0}, {7, -1}, {0, 0}, {1, 1}, {2, 2}};
  CHECK_THROWS_AS(lift_one_lipschitz(c8, b, negative), std::invalid_argument);
}
