#include <doctest.h>

#include <liprange/entropy.hpp>

#include <cmath>
#include <functional>

#include "test_util.hpp"

using namespace lip;

namespace {

// random joint law over a product of small ranges, rational weights
FiniteDistribution random_joint(Substream& rng, int coords, int alphabet) {
  FiniteDistribution dist;
  std::vector<std::int64_t> outcome(coords);
  std::vector<unsigned long> weights;
  std::function<void(int)> fill = [&](int i) {
    if (i == coords) {
      dist.outcomes.push_back(outcome);
      weights.push_back(1 + rng.next_below(20));
      return;
    }
    for (int x = 0; x < alphabet; ++x) {
      outcome[i] = x;
      fill(i + 1);
    }
  };
  fill(0);
  unsigned long total = 0;
  for (auto w : weights) total += w;
  for (auto w : weights) {
    mpq_class p(w, total);
    p.canonicalize();
    dist.probabilities.push_back(p);
  }
  dist.check();
  return dist;
}

}  // namespace

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == doctest::Approx(0.0));
  CHECK(binary_entropy(0.25) == doctest::Approx(0.8112781245).epsilon(1e-9));
  CHECK_THROWS_AS(binary_entropy(1.5), std::invalid_argument);
}

TEST_CASE("entropy of uniform support is log2(N)") {
  std::vector<std::vector<std::int64_t>> support;
  for (std::int64_t i = 0; i < 19; ++i) support.push_back({i});
  auto dist = FiniteDistribution::uniform(support);
  CHECK(entropy(dist) == doctest::Approx(std::log2(19.0)).epsilon(1e-12));
}

TEST_CASE("chain rule across three blocks") {
  Substream rng(41, "entropy_chain");
  for (int rep = 0; rep < 20; ++rep) {
    auto joint = random_joint(rng, 3, 3);
    const double lhs = entropy(joint);
    const double rhs = entropy(joint.marginal({0})) + conditional_entropy(joint, {1}, {0}) +
                       conditional_entropy(joint, {2}, {0, 1});
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("conditioning cannot increase entropy") {
  Substream rng(42, "entropy_mono");
  for (int rep = 0; rep < 20; ++rep) {
    auto joint = random_joint(rng, 3, 3);
    CHECK(conditional_entropy(joint, {0}, {1, 2}) <=
          conditional_entropy(joint, {0}, {1}) + 1e-9);
    CHECK(conditional_entropy(joint, {0}, {1}) <= entropy(joint.marginal({0})) + 1e-9);
  }
}

TEST_CASE("shearer bound holds on random covers") {
  Substream rng(43, "entropy_shearer");
  for (int rep = 0; rep < 30; ++rep) {
    auto joint = random_joint(rng, 4, 2);
    // mixture of two random partitions keeps per-coordinate weight exactly 1
    FractionalCover cover;
    cover.coordinate_count = 4;
    cover.rank = {0, 1, 2, 3};
    const double theta = 0.25 + 0.5 * rng.next_unit();
    for (double alpha : {theta, 1.0 - theta}) {
      std::vector<std::vector<int>> blocks(1 + rng.next_below(3));
      for (int i = 0; i < 4; ++i) blocks[rng.next_below(blocks.size())].push_back(i);
      for (auto& block : blocks)
        if (!block.empty()) cover.sets.emplace_back(block, alpha);
    }
    auto bound = shearer_bound(joint, cover);
    CHECK(bound.slack() >= -1e-9);
  }
}

TEST_CASE("cover validation") {
  FractionalCover bad;
  bad.coordinate_count = 2;
  bad.sets = {{{0, 1}, 0.5}, {{0}, 0.5}};  // coordinate 1 covered 0.5 only
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
}

TEST_CASE("preceding uses strict rank dominance") {
  FractionalCover cover;
  cover.coordinate_count = 4;
  cover.rank = {1, 0, 3, 2};
  CHECK(cover.preceding({2}) == std::vector<int>{0, 1, 3});
  CHECK(cover.preceding({0, 2}) == std::vector<int>{1});
  CHECK(cover.preceding({1}).empty());
}

TEST_CASE("exact field distribution and the C_{4,1} Shearer cover") {
  auto joint = exact_field_distribution(build_layered_cycle(4, 1), 0, ModelKind::m_lipschitz(1));
  CHECK(joint.outcomes.size() == 19);
  const double lhs = entropy(joint);
  CHECK(lhs == doctest::Approx(std::log2(19.0)).epsilon(1e-12));
  auto cover = build_cnk_shearer_cover(4, 1);
  auto bound = shearer_bound(joint, cover);
  CHECK(bound.lhs == doctest::Approx(lhs).epsilon(1e-12));
  CHECK(bound.rhs >= bound.lhs - 1e-9);
}

TEST_CASE("cnk shearer covers satisfy the exact-cover condition") {
  // build_cnk_shearer_cover checks itself; exercise several shapes
  for (int n : {4, 6, 8, 10})
    for (int k : {1, 2, 3}) CHECK_NOTHROW(build_cnk_shearer_cover(n, k));
}
