#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "exact.hpp"
#include "graph.hpp"
#include "lipschitz.hpp"

// Executable proof constructions: the high-set decomposition (A / Q*) with
// its family of high-reaching extensions for M >= 2, and the M = 1 lifting
// recursion.  All functions here are partial assignments over a ball,
// represented as vertex -> value maps.

namespace lip {

using PartialAssignment = std::map<int, std::int64_t>;

namespace detail {

inline std::map<int, int> layer_index_of(const BallDecomposition& ball) {
  std::map<int, int> layer;
  for (int i = 0; i <= ball.radius; ++i)
    for (int v : ball.layers[i]) layer[v] = i;
  return layer;
}

inline void check_ball_function(const Graph& g, const BallDecomposition& ball,
                                const PartialAssignment& f, std::int64_t M) {
  auto layer = layer_index_of(ball);
  for (const auto& [v, _] : f)
    if (!layer.count(v)) throw std::invalid_argument("assignment vertex outside the ball");
  for (const auto& [v, _] : layer)
    if (!f.count(v)) throw std::invalid_argument("assignment missing a ball vertex");
  for (const auto& [v, value] : f)
    for (int w : g.neighbors(v)) {
      if (!layer.count(w) || w < v) continue;
      if (std::llabs(value - f.at(w)) > M)
        throw std::invalid_argument("input is not M-Lipschitz on the ball");
    }
  std::int64_t boundary_min = std::numeric_limits<std::int64_t>::max();
  for (int v : ball.boundary()) boundary_min = std::min(boundary_min, f.at(v));
  if (boundary_min != 0)
    throw std::invalid_argument(
        "boundary not normalized: translate f so that min over the boundary is 0");
}

}  // namespace detail

struct HighSetDecomposition {
  std::vector<int> high_set;   // A: vertices with f(u) >= M(i+1)/2 in layer i
  std::vector<int> q_star;     // neighbors of A pulled above the next threshold
  std::vector<int> frozen;     // A u Q* u boundary, the set extensions agree on
};

inline HighSetDecomposition high_set_decomposition(const Graph& g, const BallDecomposition& ball,
                                                   const PartialAssignment& f, std::int64_t M) {
  detail::check_ball_function(g, ball, f, M);
  auto layer = detail::layer_index_of(ball);
  HighSetDecomposition out;
  std::map<int, char> in_a;
  for (const auto& [v, i] : layer)
    if (2 * f.at(v) >= M * (i + 1)) {  // f(v) >= M(i+1)/2
      out.high_set.push_back(v);
      in_a[v] = 1;
    }
  for (const auto& [v, i] : layer) {
    if (in_a.count(v)) continue;
    for (int w : g.neighbors(v)) {
      if (!in_a.count(w)) continue;
      if (2 * f.at(w) > M * (i + 2)) {  // some A-neighbor above M(i+2)/2
        out.q_star.push_back(v);
        break;
      }
    }
  }
  out.frozen = out.high_set;
  out.frozen.insert(out.frozen.end(), out.q_star.begin(), out.q_star.end());
  const auto& boundary = ball.boundary();
  out.frozen.insert(out.frozen.end(), boundary.begin(), boundary.end());
  std::sort(out.frozen.begin(), out.frozen.end());
  out.frozen.erase(std::unique(out.frozen.begin(), out.frozen.end()), out.frozen.end());
  std::sort(out.high_set.begin(), out.high_set.end());
  std::sort(out.q_star.begin(), out.q_star.end());
  return out;
}

struct HighExtensionFamily {
  std::vector<PartialAssignment> functions;  // enumerated up to `limit`
  mpz_class family_size;                     // full size of the construction
  HighSetDecomposition decomposition;
  std::vector<int> free_vertices;            // sorted by (layer, id)
};

// Integer realization of the free-vertex intervals [Mi/2, M(i+1)/2 - 1]:
// [ceil(Mi/2), ceil(M(i+1)/2) - 1], which is the tightest integer interval
// with g(u) >= Mi/2 and g(u) < M(i+1)/2, and keeps >= (M-1)/2 choices.
inline std::pair<std::int64_t, std::int64_t> high_extension_interval(std::int64_t M, int i) {
  return {(M * i + 1) / 2, (M * (i + 1) + 1) / 2 - 1};
}

inline HighExtensionFamily generate_high_extensions(const Graph& g, const BallDecomposition& ball,
                                                    const PartialAssignment& f, std::int64_t M,
                                                    std::uint64_t limit) {
  if (M < 2)
    throw std::invalid_argument("high extensions need M >= 2; use lift_one_lipschitz for M = 1");
  if (!ball.exact_radius) throw std::invalid_argument("ball must have exact radius");
  HighExtensionFamily out;
  out.decomposition = high_set_decomposition(g, ball, f, M);
  auto layer = detail::layer_index_of(ball);
  const std::vector<int>& frozen = out.decomposition.frozen;

  for (int i = 1; i <= ball.radius; ++i)
    for (int v : ball.layers[i])
      if (!std::binary_search(frozen.begin(), frozen.end(), v)) out.free_vertices.push_back(v);

  out.family_size = 1;
  for (int v : out.free_vertices) {
    auto [lo, hi] = high_extension_interval(M, layer.at(v));
    out.family_size *= (hi - lo + 1);
  }

  // Lexicographic enumeration over the free vertices, truncated at `limit`.
  PartialAssignment current = f;
  std::vector<std::int64_t> cursor(out.free_vertices.size());
  for (std::size_t j = 0; j < out.free_vertices.size(); ++j) {
    auto [lo, hi] = high_extension_interval(M, layer.at(out.free_vertices[j]));
    cursor[j] = lo;
    current[out.free_vertices[j]] = lo;
  }
  while (out.functions.size() < limit) {
    out.functions.push_back(current);
    // advance odometer (last vertex fastest)
    std::size_t j = out.free_vertices.size();
    while (j > 0) {
      --j;
      auto [lo, hi] = high_extension_interval(M, layer.at(out.free_vertices[j]));
      if (cursor[j] < hi) {
        current[out.free_vertices[j]] = ++cursor[j];
        break;
      }
      cursor[j] = lo;
      current[out.free_vertices[j]] = lo;
      if (j == 0) return out;  // odometer wrapped: family exhausted
    }
    if (out.free_vertices.empty()) break;  // single function
  }
  return out;
}

// M = 1 lifting recursion: pushes a nonnegative 1-Lipschitz function up layer
// by layer until the center reaches the radius, fixing the boundary.
inline PartialAssignment lift_one_lipschitz(const Graph& g, const BallDecomposition& ball,
                                            const PartialAssignment& f) {
  detail::check_ball_function(g, ball, f, 1);
  for (const auto& [v, value] : f)
    if (value < 0)
      throw std::invalid_argument("lift requires nonnegative values; apply |f| first");
  auto layer = detail::layer_index_of(ball);
  PartialAssignment h = f;
  for (int i = 1; i <= ball.radius; ++i)
    for (const auto& [v, li] : layer)
      if (li >= i && h[v] == i - 1) h[v] = i;  // v in B_{r-i} stuck at i-1
  return h;
}

}  // namespace lip
