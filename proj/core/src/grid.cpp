// SPDX-License-Identifier: Apache-2.0
#include "opalg/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opalg {

Grid Grid::uniform(double start, double end, std::size_t points) {
  if (points < 2) throw std::invalid_argument("Grid: need at least 2 points");
  if (!(end > start)) throw std::invalid_argument("Grid: end must exceed start");
  return Grid{start, end, points};
}

double Grid::spacing() const { return (end - start) / double(points - 1); }

double Grid::point(std::size_t i) const { return start + spacing() * double(i); }

Eigen::VectorXd Grid::abscissae() const {
  Eigen::VectorXd x(points);
  for (std::size_t i = 0; i < points; ++i) x[Eigen::Index(i)] = point(i);
  return x;
}

Eigen::VectorXd Grid::weights() const {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(Eigen::Index(points), spacing());
  w[0] *= 0.5;
  w[Eigen::Index(points) - 1] *= 0.5;
  return w;
}

bool Grid::operator==(const Grid& other) const {
  return start == other.start && end == other.end && points == other.points;
}

std::complex<double> trapezoid(const Grid& g, const Eigen::VectorXcd& samples) {
  if (std::size_t(samples.size()) != g.points)
    throw std::invalid_argument("trapezoid: sample count does not match grid");
  return (g.weights().cast<std::complex<double>>().array() * samples.array()).sum();
}

double trapezoid(const Grid& g, const Eigen::VectorXd& samples) {
  if (std::size_t(samples.size()) != g.points)
    throw std::invalid_argument("trapezoid: sample count does not match grid");
  return (g.weights().array() * samples.array()).sum();
}

double interp_linear(const Grid& g, const Eigen::VectorXd& samples, double t) {
  if (std::size_t(samples.size()) != g.points)
    throw std::invalid_argument("interp_linear: sample count does not match grid");
  const double h = g.spacing();
  double u = (t - g.start) / h;
  u = std::clamp(u, 0.0, double(g.points - 1));
  const auto i0 = Eigen::Index(std::min(std::size_t(std::floor(u)), g.points - 2));
  const double frac = u - double(i0);
  return samples[i0] * (1.0 - frac) + samples[i0 + 1] * frac;
}

}  // namespace opalg
