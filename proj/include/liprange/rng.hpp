#pragma once

#include <cstdint>
#include <string_view>

// Deterministic randomness utilities.  All randomness in the library flows
// from a single 64-bit seed through labeled substreams, so every run is
// replayable bit-exactly.

namespace lip {

// splitmix64 finalizer (Vigna).  Used both as a mixer and as the substream
// derivation function.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Substream state: (seed, label, index) -> generator.  Successive calls to
// next_u64() walk the counter, so a Substream behaves like an ordinary RNG
// whose whole trajectory is a pure function of (seed, label, start index).
class Substream {
 public:
  Substream(std::uint64_t seed, std::string_view label, std::uint64_t index = 0)
      : base_(mix64(seed ^ mix64(hash_label(label)))), counter_(index) {}

  std::uint64_t next_u64() { return mix64(base_ + 0x632be59bd9b4e019ULL * ++counter_); }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    // Rejection from the top to avoid modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r >= limit);
    return r % n;
  }

  std::int64_t next_in(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t base_;
  std::uint64_t counter_;
};

// Stateless access to the value at an absolute position of a substream.
// CFTP keys its randomness by absolute (negative) time through this, so an
// epoch extension re-reads exactly the randomness earlier epochs used.
inline std::uint64_t u64_at(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  return mix64(mix64(seed ^ mix64(hash_label(label))) + 0x632be59bd9b4e019ULL * (index + 1));
}

inline double unit_at(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  return static_cast<double>(u64_at(seed, label, index) >> 11) * 0x1.0p-53;
}

}  // namespace lip
