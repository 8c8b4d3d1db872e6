// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace opalg {

// Seeded random source with portable output. The engine is mt19937_64 (its
// bit stream is pinned by the standard); the double transforms are written
// out by hand because the standard library distributions are free to differ
// across implementations, and reports must be byte-reproducible anywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Identifier recorded in reports next to the seed.
  static constexpr const char* kAlgorithm = "mt19937_64/canonical53/box-muller";

  std::uint64_t bits() { return eng_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return double(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [lo, hi] via rejection-free modulo of 64 bits; the
  // bias is < 2^-32 for the small ranges used here.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = std::uint64_t(hi - lo) + 1;
    return lo + std::int64_t(eng_() % span);
  }

  // Standard normal via Box-Muller (cosine branch).
  double normal();

  // Standard complex normal: E|z|^2 = 1.
  std::complex<double> cnormal();

 private:
  std::mt19937_64 eng_;
};

}  // namespace opalg
