// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "opalg/grid.hpp"
#include "opalg/linalg.hpp"
#include "opalg/rng.hpp"

using namespace opalg;

TEST_CASE("grid abscissae, spacing and trapezoid weights") {
  const Grid g = Grid::uniform(0.0, 1.0, 5);
  CHECK(g.spacing() == doctest::Approx(0.25));
  CHECK(g.point(0) == doctest::Approx(0.0));
  CHECK(g.point(4) == doctest::Approx(1.0));
  const Eigen::VectorXd w = g.weights();
  REQUIRE(w.size() == 5);
  CHECK(w[0] == doctest::Approx(0.125));
  CHECK(w[2] == doctest::Approx(0.25));
  CHECK(w[4] == doctest::Approx(0.125));
  // weights integrate the constant 1 to the interval length
  CHECK(w.sum() == doctest::Approx(1.0));
}

TEST_CASE("trapezoid rule is exact on affine integrands") {
  const Grid g = Grid::uniform(-1.0, 2.0, 7);
  Eigen::VectorXd lin(7);
  for (int i = 0; i < 7; ++i) lin[i] = 3.0 * g.point(std::size_t(i)) - 1.0;
  // integral of 3x - 1 over [-1, 2] = 3/2 (4 - 1) - 3 = 1.5
  CHECK(trapezoid(g, lin) == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("trapezoid error on a quadratic equals the Euler-Maclaurin term") {
  // For f'' constant the composite error is exactly h^2 (b-a) f'' / 12.
  const Grid g = Grid::uniform(0.0, 1.0, 101);
  Eigen::VectorXd sq(101);
  for (int i = 0; i < 101; ++i) sq[i] = g.point(std::size_t(i)) * g.point(std::size_t(i));
  const double h = g.spacing();
  const double predicted = 1.0 / 3.0 + h * h * 2.0 / 12.0;
  CHECK(trapezoid(g, sq) == doctest::Approx(predicted).epsilon(1e-13));
}

TEST_CASE("complex trapezoid integrates real and imaginary parts") {
  const Grid g = Grid::uniform(0.0, 1.0, 51);
  ComplexVector s(51);
  for (int i = 0; i < 51; ++i) {
    const double x = g.point(std::size_t(i));
    s[i] = Complex(x, 1.0 - x);
  }
  const Complex v = trapezoid(g, s);
  CHECK(v.real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(v.imag() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("piecewise linear interpolation and clamping") {
  const Grid g = Grid::uniform(0.0, 1.0, 3);
  Eigen::VectorXd s(3);
  s << 1.0, 3.0, 2.0;
  CHECK(interp_linear(g, s, 0.25) == doctest::Approx(2.0));
  CHECK(interp_linear(g, s, 0.75) == doctest::Approx(2.5));
  CHECK(interp_linear(g, s, -5.0) == doctest::Approx(1.0));  // clamped left
  CHECK(interp_linear(g, s, 5.0) == doctest::Approx(2.0));   // clamped right
}

TEST_CASE("singular values and schatten norms of a fixed matrix") {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 3.0;
  a(1, 1) = -4.0;  // singular values {4, 3}
  const Eigen::VectorXd sv = singular_values(a);
  REQUIRE(sv.size() == 2);
  CHECK(sv[0] == doctest::Approx(4.0));
  CHECK(sv[1] == doctest::Approx(3.0));
  CHECK(schatten_norm(a, 1.0) == doctest::Approx(7.0));
  CHECK(schatten_norm(a, 2.0) == doctest::Approx(5.0));
  CHECK(schatten_norm(a, 4.0) == doctest::Approx(std::pow(337.0, 0.25)));
  CHECK(schatten_norm(a, kInfinity) == doctest::Approx(4.0));
  CHECK(operator_norm(a) == doctest::Approx(4.0));
  CHECK(frobenius_norm(a) == doctest::Approx(5.0));
}

TEST_CASE("schatten norm of a rank-one matrix is p-independent") {
  ComplexVector u(3), v(3);
  u << Complex(1, 1), Complex(0, 2), Complex(-1, 0);
  v << Complex(2, 0), Complex(0, -1), Complex(1, 1);
  const ComplexMatrix m = u * v.adjoint();
  const double sigma = u.norm() * v.norm();
  for (double p : {1.0, 2.0, 3.5, kInfinity})
    CHECK(schatten_norm(m, p) == doctest::Approx(sigma).epsilon(1e-12));
}

TEST_CASE("hermitian validation symmetrizes and rejects") {
  ComplexMatrix h(2, 2);
  h << 2.0, Complex(1.0, 1e-14), Complex(1.0, -1e-14), 3.0;
  const HermitianMatrix hm(h);
  CHECK((hm.matrix() - hm.matrix().adjoint()).cwiseAbs().maxCoeff() == 0.0);

  ComplexMatrix bad(2, 2);
  bad << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(HermitianMatrix{bad}, std::invalid_argument);
}

TEST_CASE("eigenvalues of a hermitian matrix come out ascending") {
  ComplexMatrix h(2, 2);
  h << 2.0, 1.0, 1.0, 2.0;
  const Eigen::VectorXd ev = eigenvalues(HermitianMatrix(h));
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(3.0));
}

TEST_CASE("psd detection tolerates tiny negative eigenvalues") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = -1e-12;
  d(1, 1) = 1.0;
  CHECK(is_psd(HermitianMatrix(d)));
  d(0, 0) = -1.0;
  CHECK_FALSE(is_psd(HermitianMatrix(d)));
}

TEST_CASE("functional calculus: square root squares back") {
  ComplexMatrix h(2, 2);
  h << 2.0, 1.0, 1.0, 2.0;
  const HermitianMatrix hm(h);
  const HermitianMatrix root = mat_fun(hm, [](double t) { return std::sqrt(t); });
  const ComplexMatrix back = root.matrix() * root.matrix();
  CHECK((back - hm.matrix()).cwiseAbs().maxCoeff() < 1e-12);

  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = -1.0;
  CHECK_THROWS_AS(mat_fun(HermitianMatrix(neg), [](double t) { return t; }),
                  std::domain_error);
}

TEST_CASE("functional calculus clamps near-zero eigenvalues to the domain") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = -1e-12;
  d(1, 1) = 4.0;
  const HermitianMatrix r = mat_fun(HermitianMatrix(d), [](double t) { return std::sqrt(t); });
  CHECK(r.matrix()(1, 1).real() == doctest::Approx(2.0));
  CHECK(std::abs(r.matrix()(0, 0)) < 1e-6);
}

TEST_CASE("spectral projection keeps strictly-above eigenspaces and flags ties") {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 0.9;
  d(1, 1) = 0.5;
  d(2, 2) = 0.1;
  const HermitianMatrix w(d);

  SpectralProjection sp = spectral_projection(w, 0.3);
  CHECK(sp.rank == 2);
  CHECK_FALSE(sp.tie_warning);
  CHECK(sp.projection(0, 0).real() == doctest::Approx(1.0));
  CHECK(sp.projection(2, 2).real() == doctest::Approx(0.0));
  // projections are idempotent
  CHECK((sp.projection * sp.projection - sp.projection).cwiseAbs().maxCoeff() < 1e-12);

  sp = spectral_projection(w, 0.5);  // exact tie: excluded and flagged
  CHECK(sp.rank == 1);
  CHECK(sp.tie_warning);
}

TEST_CASE("rng engine conformance: standard-mandated 10000th output") {
  Rng r(5489u);  // default mt19937_64 seed
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = r.bits();
  CHECK(v == 9981545732273789042ull);
}

TEST_CASE("rng streams are reproducible and in range") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.bits() == b.bits());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const std::int64_t k = a.uniform_int(-2, 3);
    CHECK(k >= -2);
    CHECK(k <= 3);
  }
  CHECK(std::string(Rng::kAlgorithm) == "mt19937_64/canonical53/box-muller");
}

TEST_CASE("rng normal moments under a fixed seed") {
  Rng r(7);
  double sum = 0.0, sumsq = 0.0, csum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    sum += x;
    sumsq += x * x;
    csum += std::norm(r.cnormal());
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(sumsq / n == doctest::Approx(1.0).epsilon(0.03));
  CHECK(csum / n == doctest::Approx(1.0).epsilon(0.03));  // E|z|^2 = 1
}
