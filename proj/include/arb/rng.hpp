// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace arb {

/// Seeded random stream with a fixed, documented draw consumption.
///
/// Every helper is defined on top of raw 64-bit engine outputs so results
/// do not depend on the standard library's distribution implementations:
///   uniform()  one engine draw (53-bit mantissa)
///   index(n)   one engine draw, plus one per (rare) rejection
///   normal()   exactly two uniform() draws (Box-Muller, no caching)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n); n must be positive.
  std::size_t index(std::size_t n) {
    const std::uint64_t range = n;
    // Reject the low values that would bias the modulo.
    const std::uint64_t threshold = (0 - range) % range;
    std::uint64_t r = engine_();
    while (r < threshold) r = engine_();
    return static_cast<std::size_t>(r % range);
  }

  bool coin() { return (engine_() >> 63) != 0; }

  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace arb
