// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "opalg/dynamics.hpp"
#include "opalg/errors.hpp"
#include "opalg/rng.hpp"

using namespace opalg;

namespace {

double svd_norm(const ComplexMatrix& m) {
  return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()[0];
}

// Frobenius-normalized matrix supported on block columns |j| <= band.
ComplexMatrix band_supported(Rng& rng, const BlockSpace& s, int band) {
  const Eigen::Index n = s.total_dim();
  ComplexMatrix f = ComplexMatrix::Zero(n, n);
  for (int j = -band; j <= band; ++j) {
    const Eigen::Index c0 = Eigen::Index(s.slot(j)) * s.block_dim;
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = c0; c < c0 + s.block_dim; ++c) f(r, c) = rng.cnormal();
  }
  return f / f.norm();
}

std::vector<ComplexMatrix> identity_blocks(const BlockSpace& s) {
  return std::vector<ComplexMatrix>(std::size_t(s.block_count()),
                                    ComplexMatrix::Identity(s.block_dim, s.block_dim));
}

}  // namespace

TEST_CASE("block space indexing wraps cyclically") {
  const BlockSpace s{3, 2};
  CHECK(s.block_count() == 7);
  CHECK(s.total_dim() == 14);
  CHECK(s.slot(-3) == 0);
  CHECK(s.slot(0) == 3);
  CHECK(s.slot(3) == 6);
  CHECK(s.step(2, 1) == 3);
  CHECK(s.step(3, 1) == -3);
  CHECK(s.step(-3, -1) == 3);
}

TEST_CASE("shift structure matches dense linear algebra") {
  const BlockSpace s{3, 2};
  const ShiftPair sp = build_shift(s);
  CHECK(sp.inverse_defect == 0.0);

  const ComplexMatrix vd = sp.v.dense();
  const ComplexMatrix id = ComplexMatrix::Identity(s.total_dim(), s.total_dim());
  CHECK((sp.v_inv.dense() * vd - id).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((vd * sp.v_inv.dense() - id).cwiseAbs().maxCoeff() < 1e-15);

  // compose and pow_shift agree with dense products entry by entry
  CHECK((compose(sp.v, sp.v).dense() - vd * vd).cwiseAbs().maxCoeff() == 0.0);
  ComplexMatrix acc = id;
  for (int n = 1; n <= 4; ++n) {
    acc = vd * acc;
    CHECK((pow_shift(sp.v, n).dense() - acc).cwiseAbs().maxCoeff() < 1e-15);
  }

  // the structured operator norm is the true operator norm
  CHECK(sp.v.op_norm() == doctest::Approx(svd_norm(vd)).epsilon(1e-12));
  CHECK(BlockOperator::band_projector(s, 1).op_norm() == 1.0);

  // adjoint matches the dense conjugate transpose
  CHECK((sp.v.adjoint().dense() - vd.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("band projector selects exactly the inner blocks") {
  const BlockSpace s{2, 2};
  const ComplexMatrix p = BlockOperator::band_projector(s, 1).dense();
  for (Eigen::Index i = 0; i < 10; ++i) {
    const bool inner = i >= 2 && i < 8;  // slots of blocks -1, 0, 1
    CHECK(p(i, i) == Complex(inner ? 1.0 : 0.0, 0.0));
  }
}

TEST_CASE("shift-power decay table matches the closed forms") {
  const BlockSpace s{8, 1};
  const ShiftPair sp = build_shift(s);

  SUBCASE("band k = 0: both directions halve per step, bound is tight") {
    const DecayTable t = power_decay(sp, 0, 1, 8);
    for (const DecayRow& r : t.rows) {
      const double want = std::pow(2.0, -r.n);
      CHECK(r.forward_norm == want);
      CHECK(r.backward_norm == want);
      CHECK(r.bound == want);
    }
    CHECK(t.within_bound);
    CHECK(t.fitted_slope_forward == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(t.fitted_slope_backward == doctest::Approx(-1.0).epsilon(1e-9));
  }

  SUBCASE("band k = 1: the slowest path starts below the axis") {
    const DecayTable t = power_decay(sp, 1, 2, 7);
    for (const DecayRow& r : t.rows) {
      // worst source block is j = -1: one amplifying edge, then decay
      CHECK(r.forward_norm == std::pow(2.0, 2 - r.n));
      CHECK(r.bound == 2.0 * std::pow(2.0, 2 - r.n));
      // dense-matrix oracle for the same quantity
      const ComplexMatrix m = pow_shift(sp.v, r.n).dense() *
                              BlockOperator::band_projector(s, 1).dense();
      CHECK(svd_norm(m) == doctest::Approx(r.forward_norm).epsilon(1e-12));
    }
  }

  SUBCASE("window guard") {
    CHECK_THROWS_AS(power_decay(sp, 2, 1, 7), WindowTooSmallError);
    CHECK_THROWS_AS(power_decay(build_shift(BlockSpace{2, 1}), 0, 1, 3),
                    WindowTooSmallError);
  }
}

TEST_CASE("weight operator: tails, schedule values, and guards") {
  const BlockSpace s{4, 2};

  SUBCASE("harmonic tail norms are the suprema of the excluded weights") {
    const BuiltW bw = build_W(s, lambda_schedule(s, "harmonic"), identity_blocks(s));
    CHECK(bw.pass);
    REQUIRE(bw.tail.size() == 4);
    for (const TailBoundRow& r : bw.tail) {
      CHECK(r.tail_norm == 1.0 / double(r.n + 2));
      CHECK(r.tail_norm == r.bound);
    }
  }

  SUBCASE("schedule values by slot") {
    const std::vector<double> h = lambda_schedule(s, "harmonic");
    const std::vector<double> g = lambda_schedule(s, "geometric4");
    const std::vector<double> o = lambda_schedule(s, "ones");
    CHECK(h[std::size_t(s.slot(0))] == 1.0);
    CHECK(h[std::size_t(s.slot(-4))] == 0.2);
    CHECK(g[std::size_t(s.slot(3))] == std::pow(4.0, -3));
    CHECK(o[std::size_t(s.slot(2))] == 1.0);
    CHECK_THROWS_AS(lambda_schedule(s, "fibonacci"), std::invalid_argument);
  }

  SUBCASE("guards") {
    std::vector<double> lam = lambda_schedule(s, "ones");
    lam[2] = -0.5;
    CHECK_THROWS_AS(build_W(s, lam, identity_blocks(s)), std::invalid_argument);
    std::vector<ComplexMatrix> blocks = identity_blocks(s);
    blocks[3](1, 1) = -1.0;
    CHECK_THROWS_AS(build_W(s, lambda_schedule(s, "ones"), blocks),
                    std::domain_error);
  }
}

TEST_CASE("weighted seminorm equals the dense trace formula") {
  const BlockSpace s{3, 2};
  const BuiltW bw = build_W(s, lambda_schedule(s, "harmonic"), identity_blocks(s));
  const ComplexMatrix wd = bw.w.dense();
  Rng rng(51);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::Index n = s.total_dim();
    ComplexMatrix x(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) x(i, j) = rng.cnormal();
    const double want = std::sqrt((x * wd * x.adjoint()).trace().real());
    CHECK(seminorm_W(bw.w, x) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("right multiplication uses the adjoint of the exact shift power") {
  const BlockSpace s{4, 2};
  const ShiftPair sp = build_shift(s);
  Rng rng(52);
  const ComplexMatrix x = band_supported(rng, s, 4);
  for (int n = -3; n <= 3; ++n) {
    const BlockOperator vn =
        n >= 0 ? pow_shift(sp.v, n) : pow_shift(sp.v_inv, -n);
    const ComplexMatrix want = x * vn.dense().adjoint();
    CHECK((right_multiply(sp, n, x) - want).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("plain witness under flat weights lands at the ceiling of log2(1/delta)") {
  const BlockSpace s{8, 1};
  const ShiftPair sp = build_shift(s);
  const BuiltW bw = build_W(s, lambda_schedule(s, "ones"), identity_blocks(s));

  const Eigen::Index n = s.total_dim();
  ComplexMatrix f1 = ComplexMatrix::Zero(n, n);
  ComplexMatrix f2 = ComplexMatrix::Zero(n, n);
  f1(2, s.slot(0)) = 1.0;  // unit Frobenius norm, right-supported on block 0
  f2(5, s.slot(0)) = 1.0;

  const TransitivityReport rep = transitivity_witness(bw, sp, f1, f2, 0, 0.01);
  CHECK(rep.pass);
  CHECK(rep.witness_index == 7);  // 2^-7 < 0.01 <= 2^-6
  CHECK(rep.defect_first == std::pow(2.0, -7));
  CHECK(rep.defect_second == std::pow(2.0, -7));
  CHECK(rep.first_defect_trace[6] == std::pow(2.0, -6));
  CHECK(rep.projection_defect == 0.0);

  SUBCASE("zero inputs witness immediately") {
    const ComplexMatrix z = ComplexMatrix::Zero(n, n);
    CHECK(transitivity_witness(bw, sp, z, z, 0, 0.01).witness_index == 0);
  }
}

TEST_CASE("transitivity under geometric weights stays within the derived window") {
  const BlockSpace s{12, 2};
  const ShiftPair sp = build_shift(s);
  const BuiltW bw = build_W(s, lambda_schedule(s, "geometric4"), identity_blocks(s));
  Rng rng(53);
  const ComplexMatrix f1 = band_supported(rng, s, 2);
  const ComplexMatrix f2 = band_supported(rng, s, 2);
  const TransitivityReport rep = transitivity_witness(bw, sp, f1, f2, 2, 1e-3);
  CHECK(rep.pass);
  CHECK(rep.witness_index >= 1);
  CHECK(rep.witness_index <= 9);
  CHECK(rep.fitted_slope == doctest::Approx(-1.0).epsilon(0.01));
}

TEST_CASE("cosine witness matches the orthogonal-block closed form") {
  const BlockSpace s{12, 2};
  const ShiftPair sp = build_shift(s);
  const BuiltW bw = build_W(s, lambda_schedule(s, "harmonic"), identity_blocks(s));
  Rng rng(54);
  const ComplexMatrix f1 = band_supported(rng, s, 0);
  const ComplexMatrix f2 = band_supported(rng, s, 0);

  // For unit right-block-0 inputs the two displaced copies of F2 land in the
  // disjoint blocks +-n, so the first defect has the closed form
  //   sqrt(2 * 4^-n / (1 + n))
  // and the second adds the 2n-displaced copies of F2 to the shifted F1:
  //   (1/2) sqrt(2 * 4^-n / (1 + n) + 2 * 4^-2n / (1 + 2 n)).
  auto defect1 = [](int nn) { return std::sqrt(2.0 * std::pow(4.0, -nn) / (1 + nn)); };
  auto defect2 = [](int nn) {
    return 0.5 * std::sqrt(2.0 * std::pow(4.0, -nn) / (1 + nn) +
                           2.0 * std::pow(4.0, -2 * nn) / (1 + 2 * nn));
  };
  const double delta = 0.03;
  int want_n = 0;
  while (defect1(want_n) >= delta || defect2(want_n) >= delta) ++want_n;
  CHECK(want_n == 5);

  const TransitivityReport rep = cosine_witness(bw, sp, f1, f2, 0, delta);
  CHECK(rep.pass);
  CHECK(rep.witness_index == want_n);
  CHECK(rep.defect_first == doctest::Approx(defect1(want_n)).epsilon(1e-12));
  CHECK(rep.defect_second == doctest::Approx(defect2(want_n)).epsilon(1e-12));
  CHECK(rep.expansion_defect <= 1e-12);
  CHECK(rep.projection_defect == 0.0);

  SUBCASE("window guard: no admissible index fits the truncation") {
    const BlockSpace tiny{3, 2};
    const ShiftPair tsp = build_shift(tiny);
    const BuiltW tbw =
        build_W(tiny, lambda_schedule(tiny, "ones"), identity_blocks(tiny));
    Rng trng(55);
    const ComplexMatrix g1 = band_supported(trng, tiny, 1);
    const ComplexMatrix g2 = band_supported(trng, tiny, 1);
    CHECK_THROWS_AS(cosine_witness(tbw, tsp, g1, g2, 1, 1e-12),
                    WindowTooSmallError);
  }
}
