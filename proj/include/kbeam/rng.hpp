#pragma once

#include <cstdint>

namespace kbeam {

// Weyl increment used by splitmix64 (golden ratio in 64-bit fixed point).
inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

// Output function of splitmix64 (Steele, Lea & Flood, 2014).
inline constexpr std::uint64_t splitmix64_finalize(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

/// Deterministic 64-bit PRNG with a fully specified output sequence.
///
/// The standard library engines are deterministic but their floating-point
/// distributions are not pinned by the standard; every reproducibility
/// contract in this library (trial trajectories, CSV bytes) is built on this
/// generator instead.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += kGoldenGamma;
    return splitmix64_finalize(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi). Returns exactly lo when lo == hi.
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  std::uint64_t state_;
};

/// Child seed for trial `trial` of a sweep entry with beam size `k`.
///
/// Two finalizer applications keyed by (k+1, trial+1) golden-ratio multiples;
/// adding more k values to a sweep never changes the stream of an existing
/// (k, trial) pair.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k, std::uint64_t trial) {
  const std::uint64_t s = splitmix64_finalize(seed + kGoldenGamma * (k + 1));
  return splitmix64_finalize(s + kGoldenGamma * (trial + 1));
}

}  // namespace kbeam
