#pragma once

#include <cstdint>
#include <initializer_list>

namespace oneshot {

// SplitMix64 step: a cheap, well-mixed 64-bit permutation. Used both as the
// generator and as a hash when deriving independent substreams, so every
// (seed, repetition, arm, session) tuple gets its own stream and results do
// not depend on scheduling order.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() { return splitmix64(state_); }

  // Uniform double in [0, 1) with 53 random bits; bit-stable across
  // platforms, unlike std::uniform_real_distribution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [0, n); rejection sampling, so no modulo bias.
  uint64_t next_below(uint64_t n) {
    const uint64_t limit = n ? (UINT64_MAX - UINT64_MAX % n) : 0;
    uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

 private:
  uint64_t state_;
};

// Derives a substream seed by hashing each path component into the base seed.
// Distinct paths give (with overwhelming probability) unrelated streams.
inline uint64_t derive_stream(uint64_t seed, std::initializer_list<uint64_t> path) {
  uint64_t s = seed;
  for (uint64_t x : path) {
    uint64_t t = s ^ (x + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2));
    s = splitmix64(t);
  }
  return s;
}

}  // namespace oneshot
