#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "exact.hpp"
#include "graph.hpp"
#include "lipschitz.hpp"

// Base-2 entropy utilities and a numeric Shearer-inequality verifier over
// exact joint distributions.

namespace lip {

inline double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary_entropy needs p in [0,1]");
  auto term = [](double q) { return q > 0.0 ? q * std::log2(1.0 / q) : 0.0; };
  return term(p) + term(1.0 - p);
}

// Joint distribution of an N-coordinate integer random vector with finite
// support.  Probabilities are kept as exact rationals.
struct FiniteDistribution {
  std::vector<std::vector<std::int64_t>> outcomes;
  std::vector<mpq_class> probabilities;

  int coordinate_count() const { return outcomes.empty() ? 0 : static_cast<int>(outcomes[0].size()); }

  static FiniteDistribution uniform(std::vector<std::vector<std::int64_t>> support) {
    if (support.empty()) throw std::invalid_argument("empty support");
    FiniteDistribution dist;
    mpq_class p(1, static_cast<unsigned long>(support.size()));
    p.canonicalize();
    dist.probabilities.assign(support.size(), p);
    dist.outcomes = std::move(support);
    return dist;
  }

  void check() const {
    if (outcomes.empty()) throw std::invalid_argument("empty support");
    if (outcomes.size() != probabilities.size())
      throw std::invalid_argument("support/probability size mismatch");
    mpq_class total = 0;
    for (const auto& p : probabilities) {
      if (p < 0) throw std::invalid_argument("negative probability");
      total += p;
    }
    if (total != 1) throw std::invalid_argument("probabilities do not sum to 1");
  }

  // Marginal over a coordinate subset (kept in the given order).
  FiniteDistribution marginal(const std::vector<int>& coords) const {
    std::map<std::vector<std::int64_t>, mpq_class> mass;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      std::vector<std::int64_t> key;
      key.reserve(coords.size());
      for (int c : coords) key.push_back(outcomes[i][c]);
      mass[key] += probabilities[i];
    }
    FiniteDistribution out;
    for (auto& [key, p] : mass) {
      if (p == 0) continue;
      out.outcomes.push_back(key);
      out.probabilities.push_back(p);
    }
    return out;
  }
};

inline double entropy(const FiniteDistribution& dist) {
  if (dist.outcomes.empty()) throw std::invalid_argument("entropy of empty distribution");
  double h = 0;
  for (const auto& p : dist.probabilities) {
    const double pd = p.get_d();
    if (pd > 0) h += pd * std::log2(1.0 / pd);
  }
  return h;
}

// H(X_A | X_C) = H(X_{A u C}) - H(X_C).
inline double conditional_entropy(const FiniteDistribution& joint, const std::vector<int>& a,
                                  const std::vector<int>& c) {
  std::vector<int> both = a;
  for (int i : c)
    if (std::find(both.begin(), both.end(), i) == both.end()) both.push_back(i);
  const double h_joint = entropy(joint.marginal(both));
  if (c.empty()) return h_joint;
  return h_joint - entropy(joint.marginal(c));
}

// Fractional cover with a weak partial order given by coordinate ranks:
// i precedes A iff rank[i] < min rank over A.
struct FractionalCover {
  int coordinate_count = 0;
  std::vector<std::pair<std::vector<int>, double>> sets;  // (A, alpha_A)
  std::vector<int> rank;                                  // empty = trivial order

  void check() const {
    std::vector<double> coverage(coordinate_count, 0.0);
    for (const auto& [set, alpha] : sets) {
      if (alpha < 0) throw std::invalid_argument("negative cover weight");
      for (int i : set) {
        if (i < 0 || i >= coordinate_count) throw std::invalid_argument("cover index out of range");
        coverage[i] += alpha;
      }
    }
    for (double c : coverage)
      if (std::abs(c - 1.0) > 1e-12)
        throw std::invalid_argument("cover weights must satisfy sum_{A containing i} alpha_A = 1");
  }

  std::vector<int> preceding(const std::vector<int>& set) const {
    std::vector<int> out;
    if (rank.empty()) return out;
    int min_rank = std::numeric_limits<int>::max();
    for (int i : set) min_rank = std::min(min_rank, rank[i]);
    for (int i = 0; i < coordinate_count; ++i)
      if (rank[i] < min_rank) out.push_back(i);
    return out;
  }
};

struct ShearerBound {
  double lhs = 0;  // H(X)
  double rhs = 0;  // sum alpha_A H(X_A | X_{i prec A})
  double slack() const { return rhs - lhs; }
};

inline ShearerBound shearer_bound(const FiniteDistribution& joint, const FractionalCover& cover) {
  if (cover.coordinate_count != joint.coordinate_count())
    throw std::invalid_argument("cover/joint coordinate mismatch");
  cover.check();
  ShearerBound out;
  std::vector<int> all(joint.coordinate_count());
  for (int i = 0; i < joint.coordinate_count(); ++i) all[i] = i;
  out.lhs = entropy(joint.marginal(all));
  for (const auto& [set, alpha] : cover.sets) {
    if (alpha == 0 || set.empty()) continue;
    out.rhs += alpha * conditional_entropy(joint, set, cover.preceding(set));
  }
  return out;
}

// Uniform joint law of the pinned family, from the enumeration oracle.
inline FiniteDistribution exact_field_distribution(const Graph& g, int v0, const ModelKind& kind,
                                                   std::uint64_t cap = kDefaultEnumerationCap) {
  std::vector<std::vector<std::int64_t>> support;
  enumerate_bruteforce(g, v0, kind, [&](const IntAssignment& f) { support.push_back(f); }, cap);
  return FiniteDistribution::uniform(std::move(support));
}

// The Shearer cover used for C_{n,k}: for every even-distance vertex v, one
// copy of its forward neighborhood, one of its backward neighborhood (each
// weight 1/(2k)), and the singleton {v} with weight 1.  Ranks follow the
// alternating layer order L_1, L_0, L_3, L_2, L_5, L_4, ...
inline FractionalCover build_cnk_shearer_cover(int n, int k, int v0 = 0) {
  Graph g = build_layered_cycle(n, k);
  auto dist = bfs_distances(g, v0);

  FractionalCover cover;
  cover.coordinate_count = g.vertex_count();
  cover.rank.resize(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    const int d = dist[v];
    cover.rank[v] = d % 2 == 1 ? d - 1 : d + 1;
  }

  // N^+ / N^- by distance layer; the pinned layer uses the convention
  // N^+(v) = N^-(w) for a fixed w at distance 2.
  std::vector<int> anchor_up;  // N^+(v) for v in the pinned layer
  {
    int w = -1;
    for (int v = 0; v < g.vertex_count() && w < 0; ++v)
      if (dist[v] == 2) w = v;
    if (w >= 0)
      for (int x : g.neighbors(w))
        if (dist[x] == 1) anchor_up.push_back(x);
  }

  const double alpha = 1.0 / (2.0 * k);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (dist[v] % 2 != 0) continue;
    std::vector<int> up, down;
    if (dist[v] == 0) {
      up = anchor_up;
      for (int x = 0; x < g.vertex_count(); ++x)
        if (dist[x] == 1 && std::find(up.begin(), up.end(), x) == up.end()) down.push_back(x);
    } else {
      for (int x : g.neighbors(v)) {
        if (dist[x] == dist[v] + 1) up.push_back(x);
        else if (dist[x] == dist[v] - 1) down.push_back(x);
      }
    }
    if (!up.empty()) cover.sets.emplace_back(up, alpha);
    if (!down.empty()) cover.sets.emplace_back(down, alpha);
    cover.sets.emplace_back(std::vector<int>{v}, 1.0);
  }
  cover.check();
  return cover;
}

}  // namespace lip
