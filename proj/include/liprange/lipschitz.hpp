#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "graph.hpp"

// Value assignments on graphs and validity for the three models:
// M-Lipschitz (integer, |df| <= M per edge), real Lipschitz (|df| <= 1),
// and Z-homomorphism (|df| = 1, bipartite hosts only).

namespace lip {

enum class Model { MLipschitz, RealLipschitz, ZHomomorphism };

struct ModelKind {
  Model model = Model::MLipschitz;
  std::int64_t M = 1;

  static ModelKind m_lipschitz(std::int64_t M) {
    if (M < 1) throw std::invalid_argument("M must be positive");
    return {Model::MLipschitz, M};
  }
  static ModelKind real_lipschitz() { return {Model::RealLipschitz, 1}; }
  static ModelKind z_homomorphism() { return {Model::ZHomomorphism, 1}; }

  bool integer_valued() const { return model != Model::RealLipschitz; }
};

using IntAssignment = std::vector<std::int64_t>;
using RealAssignment = std::vector<double>;

struct IntLipschitzFunction {
  IntAssignment values;
  std::int64_t M = 1;
  int pinned = 0;  // vertex with value 0
};

struct RealLipschitzFunction {
  RealAssignment values;
  int pinned = 0;
};

// Slack accepted on real-model edge constraints; uniform-interval samplers
// sit exactly on the boundary with probability zero but floating point can
// land epsilon outside.
inline constexpr double kRealTolerance = 1e-12;

struct ValidationReport {
  bool pinned_ok = true;              // pinned value present and zero
  std::vector<std::pair<int, int>> violating_edges;

  bool valid() const { return pinned_ok && violating_edges.empty(); }
};

namespace detail {
template <typename Value>
ValidationReport validate_impl(const Graph& g, const std::vector<Value>& values, int pinned,
                               const ModelKind& kind) {
  if (static_cast<int>(values.size()) != g.vertex_count())
    throw std::invalid_argument("assignment size does not match vertex count");
  if (pinned < 0 || pinned >= g.vertex_count())
    throw std::invalid_argument("pinned vertex out of range");
  ValidationReport report;
  if constexpr (std::is_floating_point_v<Value>) {
    report.pinned_ok = std::abs(values[pinned]) <= kRealTolerance;
  } else {
    report.pinned_ok = values[pinned] == 0;
  }
  for (int u = 0; u < g.vertex_count(); ++u) {
    for (int v : g.neighbors(u)) {
      if (v < u) continue;
      const double diff = std::abs(static_cast<double>(values[u]) - static_cast<double>(values[v]));
      bool ok = true;
      switch (kind.model) {
        case Model::MLipschitz:
          ok = diff <= static_cast<double>(kind.M);
          break;
        case Model::RealLipschitz:
          ok = diff <= 1.0 + kRealTolerance;
          break;
        case Model::ZHomomorphism:
          ok = diff == 1.0;
          break;
      }
      if (!ok) report.violating_edges.emplace_back(u, v);
    }
  }
  return report;
}
}  // namespace detail

inline ValidationReport validate(const Graph& g, const IntAssignment& values, int pinned,
                                 const ModelKind& kind) {
  if (kind.model == Model::RealLipschitz)
    throw std::invalid_argument("integer assignment validated against the real model");
  if (kind.model == Model::ZHomomorphism && !g.is_bipartite())
    throw std::invalid_argument("Z-homomorphisms require a bipartite graph");
  return detail::validate_impl(g, values, pinned, kind);
}

inline ValidationReport validate(const Graph& g, const RealAssignment& values, int pinned) {
  return detail::validate_impl(g, values, pinned, ModelKind::real_lipschitz());
}

inline ValidationReport validate(const Graph& g, const IntLipschitzFunction& f) {
  return validate(g, f.values, f.pinned, ModelKind::m_lipschitz(f.M));
}

// R(f) = max - min + 1.
template <typename Value>
double range_of(const std::vector<Value>& values) {
  if (values.empty()) throw std::invalid_argument("range of empty assignment");
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return static_cast<double>(*hi) - static_cast<double>(*lo) + 1.0;
}

inline std::int64_t range_int(const IntAssignment& values) {
  if (values.empty()) throw std::invalid_argument("range of empty assignment");
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo + 1;
}

// Pointwise extremal member of the pinned lattice: sign * M * dist(v, v0).
inline IntLipschitzFunction extremal(const Graph& g, int v0, std::int64_t M, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  auto dist = bfs_distances(g, v0);
  IntLipschitzFunction f;
  f.M = M;
  f.pinned = v0;
  f.values.resize(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v)
    f.values[v] = static_cast<std::int64_t>(sign) * M * dist[v];
  return f;
}

// (min, max) of f over a vertex set.
template <typename Value>
std::pair<Value, Value> interval_stat(const std::vector<Value>& values,
                                      const std::vector<int>& subset) {
  if (subset.empty()) throw std::invalid_argument("interval_stat over empty set");
  Value lo = values[subset.front()], hi = lo;
  for (int v : subset) {
    lo = std::min(lo, values[v]);
    hi = std::max(hi, values[v]);
  }
  return {lo, hi};
}

// Partial assignment: vertex -> value over a restricted domain.
template <typename Value>
std::map<int, Value> restrict_to(const std::vector<Value>& values, const std::vector<int>& subset) {
  std::map<int, Value> out;
  for (int v : subset) out[v] = values[v];
  return out;
}

}  // namespace lip
