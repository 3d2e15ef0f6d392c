#pragma once

#include <cmath>
#include <cstdint>

namespace php {

// SplitMix64 finalizer (Steele/Lea/Flood). Used both as the per-stream
// generator step and to derive decorrelated per-trial seeds from a master
// seed. Hand-rolled so that simulation output is bit-reproducible across
// platforms and standard libraries.
inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Seed for an independent stream: trial i of a run keyed by master_seed.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream) {
  return mix64(master_seed + kSplitMixGamma * (stream + 1));
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += kSplitMixGamma;
    return mix64(state_);
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Poisson draw by Knuth's product method, chunked so the running product
// never underflows for large means (each chunk has mean <= 500, and
// exp(-500) is comfortably above the smallest normal double).
// std::poisson_distribution is implementation-defined and would break
// cross-platform reproducibility.
inline long poisson_sample(double mean, SplitMix64& rng) {
  constexpr double kChunk = 500.0;
  long total = 0;
  while (mean > kChunk) {
    mean -= kChunk;
    const double limit = std::exp(-kChunk);
    long k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= rng.next_double();
    } while (p > limit);
    total += k - 1;
  }
  const double limit = std::exp(-mean);
  long k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= rng.next_double();
  } while (p > limit);
  return total + k - 1;
}

}  // namespace php
