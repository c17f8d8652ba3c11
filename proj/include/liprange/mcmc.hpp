#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "lipschitz.hpp"
#include "rng.hpp"

// Heat-bath Glauber dynamics for the integer and real models, and exact
// sampling via monotone coupling from the past.

namespace lip {

// Allowed interval for resampling vertex v given its neighbors' values:
// [max_w f(w) - M, min_w f(w) + M].  Nonempty whenever f is valid.
inline std::pair<std::int64_t, std::int64_t> heat_bath_interval(const Graph& g,
                                                                const IntAssignment& values,
                                                                int v, std::int64_t M) {
  std::int64_t max_n = values[g.neighbors(v).front()];
  std::int64_t min_n = max_n;
  for (int w : g.neighbors(v)) {
    max_n = std::max(max_n, values[w]);
    min_n = std::min(min_n, values[w]);
  }
  return {max_n - M, min_n + M};
}

// Floor-based quantile coupling: new value = lo + floor(u * (hi - lo + 1)).
// Monotone in the neighbor values for fixed u, which is the correctness core
// of the monotone CFTP below.
inline std::int64_t heat_bath_update(const Graph& g, const IntAssignment& values, int v, double u,
                                     std::int64_t M) {
  auto [lo, hi] = heat_bath_interval(g, values, v, M);
  if (lo > hi) throw std::logic_error("heat-bath interval empty: input not M-Lipschitz");
  std::int64_t pick = lo + static_cast<std::int64_t>(u * static_cast<double>(hi - lo + 1));
  return std::min(pick, hi);
}

// Same quantile coupling with u = w / 2^64 in 64-bit fixed point; exact and
// branch-free, used in the CFTP hot loop.  floor(w * width / 2^64) < width,
// so no clamp is needed.
inline std::int64_t heat_bath_update_u64(std::int64_t lo, std::int64_t hi, std::uint64_t w) {
  const auto width = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<std::int64_t>(
                  static_cast<std::uint64_t>((static_cast<unsigned __int128>(w) * width) >> 64));
}

inline double heat_bath_update_real(const Graph& g, const RealAssignment& values, int v,
                                    double u) {
  double max_n = values[g.neighbors(v).front()];
  double min_n = max_n;
  for (int w : g.neighbors(v)) {
    max_n = std::max(max_n, values[w]);
    min_n = std::min(min_n, values[w]);
  }
  const double lo = max_n - 1.0, hi = min_n + 1.0;
  return lo + u * (hi - lo);
}

struct NoCoalescence : std::runtime_error {
  NoCoalescence() : std::runtime_error("no coalescence within the configured update budget") {}
};

struct CftpOptions {
  std::uint64_t max_total_updates = 1ULL << 30;
  std::uint64_t initial_epoch = 0;  // updates in the first epoch; 0 = auto
};

struct CftpResult {
  IntAssignment values;
  int epochs = 0;               // doubling rounds used
  std::uint64_t updates = 0;    // total updates performed
};

// Monotone CFTP for the M-Lipschitz model with an arbitrary set of pinned
// vertices (vertex -> fixed value).  The extremal states are the pointwise
// min/max of the Lipschitz cones grown from the pinned values; randomness is
// keyed by absolute (negative) time so that every epoch extension reuses the
// past exactly.
inline CftpResult cftp_sample_pinned(const Graph& g,
                                     const std::map<int, std::int64_t>& pinned, std::int64_t M,
                                     std::uint64_t seed, const CftpOptions& options = {}) {
  if (pinned.empty()) throw std::invalid_argument("at least one pinned vertex required");
  const int n = g.vertex_count();
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  IntAssignment top(n, kInf), bottom(n, -kInf);
  for (const auto& [p, value] : pinned) {
    auto dist = bfs_distances(g, p);
    for (int v = 0; v < n; ++v) {
      top[v] = std::min(top[v], value + M * dist[v]);
      bottom[v] = std::max(bottom[v], value - M * dist[v]);
    }
  }
  for (int v = 0; v < n; ++v)
    if (bottom[v] > top[v])
      throw std::invalid_argument("pinned values admit no M-Lipschitz extension");

  std::vector<int> free;
  for (int v = 0; v < n; ++v)
    if (!pinned.count(v)) free.push_back(v);
  if (free.empty()) return {top, 0, 0};
  const std::uint64_t f = free.size();

  std::uint64_t epoch = options.initial_epoch ? options.initial_epoch : std::max<std::uint64_t>(f, 64);
  const std::uint64_t stream = mix64(seed ^ mix64(hash_label("cftp")));
  // flat adjacency copy for the hot loop
  std::vector<std::size_t> off(n + 1, 0);
  std::vector<int> adj;
  for (int v = 0; v < n; ++v) {
    off[v + 1] = off[v] + g.neighbors(v).size();
    adj.insert(adj.end(), g.neighbors(v).begin(), g.neighbors(v).end());
  }
  CftpResult result;
  while (true) {
    if (result.updates + epoch > options.max_total_updates) throw NoCoalescence{};
    IntAssignment hi = top, lo = bottom;
    bool merged = false;
    // Times run t = -epoch .. -1; t_abs = -1-t indexes the fixed randomness,
    // so an epoch extension re-reads exactly the randomness it used before.
    // Work proceeds in sweep-sized chunks; coalescence is probed once per
    // chunk (monotone coupled chains never diverge once equal, and the
    // post-merge lo updates are no-ops, so the final state is unchanged).
    std::uint64_t remaining = epoch;
    while (remaining > 0) {
      const std::uint64_t chunk = std::min<std::uint64_t>(remaining, f);
      std::uint64_t slot = (remaining - 1) % f;
      if (merged) {
        for (std::uint64_t i = 0; i < chunk; ++i) {
          const std::uint64_t t_abs = remaining - 1 - i;
          const int v = free[slot];
          slot = slot ? slot - 1 : f - 1;
          const std::uint64_t w = mix64(stream + 0x632be59bd9b4e019ULL * (t_abs + 1));
          std::int64_t max_h = hi[adj[off[v]]], min_h = max_h;
          for (std::size_t j = off[v] + 1; j < off[v + 1]; ++j) {
            max_h = std::max(max_h, hi[adj[j]]);
            min_h = std::min(min_h, hi[adj[j]]);
          }
          hi[v] = heat_bath_update_u64(max_h - M, min_h + M, w);
        }
      } else {
        for (std::uint64_t i = 0; i < chunk; ++i) {
          const std::uint64_t t_abs = remaining - 1 - i;
          const int v = free[slot];
          slot = slot ? slot - 1 : f - 1;
          // matches u64_at(seed, "cftp", t_abs)
          const std::uint64_t w = mix64(stream + 0x632be59bd9b4e019ULL * (t_abs + 1));
          std::int64_t max_h, min_h, max_l, min_l;
          max_h = min_h = hi[adj[off[v]]];
          max_l = min_l = lo[adj[off[v]]];
          for (std::size_t j = off[v] + 1; j < off[v + 1]; ++j) {
            const int x = adj[j];
            max_h = std::max(max_h, hi[x]);
            min_h = std::min(min_h, hi[x]);
            max_l = std::max(max_l, lo[x]);
            min_l = std::min(min_l, lo[x]);
          }
          hi[v] = heat_bath_update_u64(max_h - M, min_h + M, w);
          lo[v] = heat_bath_update_u64(max_l - M, min_l + M, w);
        }
        merged = hi == lo;
      }
      remaining -= chunk;
    }
    result.updates += epoch;
    ++result.epochs;
    if (merged) {
      result.values = std::move(hi);
      return result;
    }
    epoch *= 2;
  }
}

inline IntLipschitzFunction cftp_sample(const Graph& g, int v0, std::int64_t M,
                                        std::uint64_t seed, const CftpOptions& options = {},
                                        CftpResult* stats = nullptr) {
  auto result = cftp_sample_pinned(g, {{v0, 0}}, M, seed, options);
  IntLipschitzFunction out;
  out.values = std::move(result.values);
  out.M = M;
  out.pinned = v0;
  if (stats) {
    stats->epochs = result.epochs;
    stats->updates = result.updates;
  }
  return out;
}

// ---- approximate real-model sampling ---------------------------------------

struct SamplerConfig {
  std::uint64_t seed = 0;
  int burn_in_sweeps = 1000;
  int thinning_sweeps = 10;
  bool systematic_scan = false;  // random scan by default for diagnostics
};

struct RealChainResult {
  std::vector<RealAssignment> samples;
  std::vector<double> trace_range;   // R(f) after each sweep
  std::vector<double> trace_probe;   // f at the probe vertex after each sweep
  int probe_vertex = 0;
};

inline RealChainResult mcmc_sample_real(const Graph& g, int v0, const SamplerConfig& config,
                                        int sample_count) {
  if (!g.is_connected()) throw std::runtime_error("sampler requires a connected graph");
  const int n = g.vertex_count();
  RealAssignment values(n, 0.0);
  std::vector<int> free;
  for (int v = 0; v < n; ++v)
    if (v != v0) free.push_back(v);

  RealChainResult out;
  // probe: a vertex far from the pin
  auto dist = bfs_distances(g, v0);
  out.probe_vertex = static_cast<int>(std::max_element(dist.begin(), dist.end()) - dist.begin());

  Substream rng(config.seed, "mcmc_real");
  auto sweep = [&] {
    for (std::size_t i = 0; i < free.size(); ++i) {
      const int v = config.systematic_scan
                        ? free[i]
                        : free[rng.next_below(free.size())];
      values[v] = heat_bath_update_real(g, values, v, rng.next_unit());
    }
    out.trace_range.push_back(range_of(values));
    out.trace_probe.push_back(values[out.probe_vertex]);
  };

  for (int s = 0; s < config.burn_in_sweeps; ++s) sweep();
  for (int taken = 0; taken < sample_count; ++taken) {
    for (int s = 0; s < config.thinning_sweeps; ++s) sweep();
    out.samples.push_back(values);
  }
  return out;
}

// ---- range statistics -------------------------------------------------------

// 95% Wilson score interval for a binomial proportion.
inline std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                                 double z = 1.959963984540054) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct RangeDistribution {
  std::map<std::int64_t, std::uint64_t> histogram;
  std::uint64_t trials = 0;

  double prob_le(std::int64_t r) const {
    std::uint64_t hits = 0;
    for (const auto& [range, count] : histogram)
      if (range <= r) hits += count;
    return trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
  }

  std::pair<double, double> wilson_le(std::int64_t r) const {
    std::uint64_t hits = 0;
    for (const auto& [range, count] : histogram)
      if (range <= r) hits += count;
    return wilson_interval(hits, trials);
  }

  double mean() const {
    double acc = 0;
    for (const auto& [range, count] : histogram)
      acc += static_cast<double>(range) * static_cast<double>(count);
    return trials ? acc / static_cast<double>(trials) : 0.0;
  }

  std::int64_t quantile(double q) const {
    const double target = q * static_cast<double>(trials);
    double acc = 0;
    for (const auto& [range, count] : histogram) {
      acc += static_cast<double>(count);
      if (acc >= target) return range;
    }
    return histogram.empty() ? 0 : histogram.rbegin()->first;
  }
};

// Collects the empirical range distribution from any sampler callable
// (trial index -> R value).
template <typename Sampler>
RangeDistribution estimate_range_distribution(Sampler&& sampler, int trials) {
  if (trials < 1) throw std::invalid_argument("trials >= 1 required");
  RangeDistribution dist;
  dist.trials = static_cast<std::uint64_t>(trials);
  for (int t = 0; t < trials; ++t) ++dist.histogram[sampler(t)];
  return dist;
}

}  // namespace lip
