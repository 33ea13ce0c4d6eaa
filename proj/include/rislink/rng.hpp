// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include "rislink/units.hpp"

namespace rislink {

/// splitmix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for the (key, counter) substream of a master seed. Streams are
/// independent of evaluation order, so trials and grid points can run in any
/// order (or concurrently) and still reproduce bit-identical results.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t key,
                                    std::uint64_t counter) {
  std::uint64_t z = mix64(master + 0x9e3779b97f4a7c15ULL);
  z = mix64(z ^ (key + 0x9e3779b97f4a7c15ULL));
  z = mix64(z ^ (counter + 0xbf58476d1ce4e5b9ULL));
  return z;
}

/// Deterministic random stream. Gaussian draws use Box-Muller on uniforms so
/// the byte-level output does not depend on the standard library's
/// distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Circularly-symmetric complex Gaussian with unit total variance,
  /// i.e. E|z|^2 = 1.
  std::complex<double> complex_gaussian() {
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
  }

  /// Standard normal.
  double gaussian() {
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rislink
