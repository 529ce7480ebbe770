#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace ritzmaj {

/// Seeded generator used for every randomized construction.
///
/// Only the raw 64-bit stream of std::mt19937_64 is consumed; uniform, normal
/// and integer variates are derived here rather than through the standard
/// distributions, whose output is implementation-defined. The same seed
/// therefore reproduces the same instance on every platform.
class Rng {
 public:
  /// Identifier written into reports so findings can be replayed.
  static constexpr std::string_view kAlgorithm = "mt19937_64/u53/box-muller/v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal variate.
  double normal();

  /// Circularly-symmetric complex normal with E|z|^2 = 1.
  std::complex<double> complex_normal();

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::size_t index(std::size_t bound);

  /// Uniform integer in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + index(hi - lo + 1); }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent child seed from `base` and a stream index (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace ritzmaj
