#pragma once

#include <cmath>
#include <cstdint>

namespace agecode {

// Every random draw in the project goes through this generator so that runs
// are reproducible from a single 64-bit seed, independent of the standard
// library's distribution implementations.
//
// Engine: xoshiro256** (Blackman & Vigna), state seeded with a splitmix64
// chain. Per-run seeds are derived with mix_seed(base, scenario, replication).

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed derivation for (base_seed, scenario_index, replication_index).
/// Documented so external tooling can reproduce any single run.
inline uint64_t mix_seed(uint64_t base, uint64_t scenario, uint64_t replication) {
  uint64_t x = splitmix64(base);
  x = splitmix64(x ^ (0x9E3779B97F4A7C15ULL * (scenario + 1)));
  x = splitmix64(x ^ (0xC2B2AE3D27D4EB4FULL * (replication + 1)));
  return x;
}

class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& word : state_) {
      x = splitmix64(x);
      word = x;
    }
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_unit() < p; }

  /// Uniform integer in [0, n). Unbiased (multiply-with-rejection).
  uint64_t uniform_below(uint64_t n) {
    __uint128_t m = static_cast<__uint128_t>(next_u64()) * n;
    auto low = static_cast<uint64_t>(m);
    if (low < n) {
      const uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<__uint128_t>(next_u64()) * n;
        low = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  /// Uniform element of GF(q); q must be a power of two.
  uint16_t field_element(uint32_t q) {
    return static_cast<uint16_t>(next_u64() & (q - 1));
  }

  /// Number of Bernoulli(p) trials up to and including the first success.
  /// Support {1, 2, ...}; p in (0, 1].
  uint64_t geometric_trials(double p) {
    if (p >= 1.0) return 1;
    // Inversion: 1 + floor(log(1-U) / log(1-p)), U in [0,1).
    const double u = next_unit();
    return 1 + static_cast<uint64_t>(std::log1p(-u) / std::log1p(-p));
  }

  /// Number of trials until k successes: sum of k independent geometrics.
  uint64_t negbin_trials(double p, uint32_t k) {
    uint64_t total = 0;
    for (uint32_t i = 0; i < k; ++i) total += geometric_trials(p);
    return total;
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t state_[4];
};

}  // namespace agecode
