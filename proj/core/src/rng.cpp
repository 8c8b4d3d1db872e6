// SPDX-License-Identifier: Apache-2.0
#include "opalg/rng.hpp"

#include <cmath>
#include <numbers>

namespace opalg {

double Rng::normal() {
  // Box-Muller; u1 is kept away from 0 so the log is finite.
  double u1 = uniform01();
  if (u1 < 0x1.0p-53) u1 = 0x1.0p-53;
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> Rng::cnormal() {
  double u1 = uniform01();
  if (u1 < 0x1.0p-53) u1 = 0x1.0p-53;
  const double u2 = uniform01();
  const double r = std::sqrt(-std::log(u1));  // so that E|z|^2 = 1
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace opalg
