// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstddef>

namespace opalg {

// Uniform sample grid on [start, end]. All quadrature in the project is the
// trapezoid rule on such grids; weights() returns the trapezoid weights.
struct Grid {
  double start = 0.0;
  double end = 1.0;
  std::size_t points = 2;

  static Grid uniform(double start, double end, std::size_t points);

  double spacing() const;
  double point(std::size_t i) const;
  Eigen::VectorXd abscissae() const;
  Eigen::VectorXd weights() const;

  bool operator==(const Grid& other) const;
};

// Trapezoid quadrature of complex samples over the grid.
std::complex<double> trapezoid(const Grid& g, const Eigen::VectorXcd& samples);
double trapezoid(const Grid& g, const Eigen::VectorXd& samples);

// Piecewise-linear evaluation of samples at an off-grid abscissa t
// (clamped to [start, end]).
double interp_linear(const Grid& g, const Eigen::VectorXd& samples, double t);

}  // namespace opalg
