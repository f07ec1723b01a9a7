#pragma once

#include <cstdint>
#include <random>

namespace hcma {

// Deterministic random stream. Every stochastic decision in the solver goes
// through this wrapper so a run is reproducible from one 64-bit seed.
// Streams for sub-phases are derived with split(), which is a pure function
// of the stream's seed and the split keys, independent of how much the
// parent stream has been consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound), bound > 0. Rejection sampling, unbiased.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  int index(std::size_t size) { return static_cast<int>(below(size)); }

  // Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  Rng split(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const {
    std::uint64_t s = seed_;
    s = mix(s ^ mix(a + 0x100));
    s = mix(s ^ mix(b + 0x200));
    s = mix(s ^ mix(c + 0x300));
    return Rng(s);
  }

  // Fisher-Yates; std::shuffle is avoided because its draws are
  // implementation-defined.
  template <typename It>
  void shuffle(It first, It last) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      std::swap(first[i - 1], first[below(i)]);
    }
  }

  std::uint64_t seed() const { return seed_; }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

namespace debug {
// When set, tour move primitives re-validate the full tour invariant
// (rank/position inverse, cached cost vs. recompute) after every move.
// Too slow for full runs; unit tests flip it on for small instances.
inline bool paranoid_checks = false;
}  // namespace debug

}  // namespace hcma
