#pragma once

#include <cstdint>
#include <random>

namespace mfu {

/// Seeded random stream shared by every sampler.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the C++
/// standard, so a seed replays identically on any conforming build. All
/// variates are derived from the raw 64-bit output by code in this class,
/// never through std::*_distribution (whose algorithms are unspecified).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Exponential(1) as -log(1 - u); finite because 1 - u >= 2^-53.
  double exponential() noexcept;

  /// Standard normal via the Box-Muller transform (one spare value cached).
  double normal() noexcept;

  double normal(double mean, double sd) noexcept { return mean + sd * normal(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

inline RngStream rng_new(std::uint64_t seed) { return RngStream(seed); }

}  // namespace mfu
