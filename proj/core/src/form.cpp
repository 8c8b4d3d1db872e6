// SPDX-License-Identifier: Apache-2.0
#include "opalg/form.hpp"

#include <cmath>

#include "opalg/errors.hpp"

namespace opalg {

double PosSesqForm::quasi_norm(const Element& a, double positivity_tol) const {
  const CStarValue saa = eval_(a, a);
  if (!saa.is_positive(positivity_tol))
    throw FormNotPositiveError(name_ + ": S(a,a) not positive within tolerance");
  return std::sqrt(cnorm(saa));
}

SchwarzReport check_schwarz(const PosSesqForm& s, const Element& a, const Element& b,
                            double rtol) {
  SchwarzReport r;
  r.lhs = cnorm(s(a, b));
  const double na = std::sqrt(cnorm(s(a, a)));
  const double nb = std::sqrt(cnorm(s(b, b)));
  r.rhs_general = 2.0 * na * nb;
  r.rhs_commutative = na * nb;
  const auto ok = [rtol, &r](double rhs) { return r.lhs <= rhs + rtol * std::max(1.0, rhs); };
  r.pass_general = ok(r.rhs_general);
  if (s.codomain().commutative()) r.pass_commutative = ok(r.rhs_commutative);
  return r;
}

TriangleReport check_triangle(const PosSesqForm& s, const Element& a, const Element& b,
                              double rtol) {
  TriangleReport r;
  r.lhs = std::sqrt(cnorm(s(a + b, a + b)));
  const double na = std::sqrt(cnorm(s(a, a)));
  const double nb = std::sqrt(cnorm(s(b, b)));
  r.rhs_q3 = std::sqrt(2.0) * (na + nb);
  r.rhs_plain = na + nb;
  const auto ok = [rtol, &r](double rhs) { return r.lhs <= rhs + rtol * std::max(1.0, rhs); };
  r.pass_q3 = ok(r.rhs_q3);
  if (s.codomain().commutative()) r.pass_plain = ok(r.rhs_plain);
  return r;
}

InvarianceReport check_invariance(const PosSesqForm& s, const AlgebraModel& model,
                                  Rng& rng, int samples, double tol) {
  InvarianceReport r;
  r.samples = samples;
  for (int i = 0; i < samples; ++i) {
    const Element a = model.random_element(rng);
    const Element x = model.random_core(rng);
    const Element y = model.random_core(rng);
    const CStarValue lhs = s(model.module_product(a, x), y);
    const CStarValue rhs = s(x, model.module_product(model.involution(a), y));
    r.max_defect = std::max(r.max_defect, cnorm(lhs - rhs));
  }
  r.pass = r.max_defect <= tol;
  return r;
}

NullSpaceResult null_space(const PosSesqForm& s, const std::vector<Element>& basis,
                           double rel_threshold) {
  if (basis.empty()) throw std::invalid_argument("null_space: empty basis");
  const Eigen::Index n = Eigen::Index(basis.size());
  Eigen::MatrixXcd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      gram(i, j) = s(basis[std::size_t(i)], basis[std::size_t(j)]).scalarize();
  // tau(S(.,.)) is sesquilinear positive, so gram must be Hermitian PSD.
  gram = 0.5 * (gram + gram.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev.minCoeff() < -1e-10 * scale)
    throw FormNotPositiveError(s.name() + ": scalarized Gram has eigenvalue " +
                               std::to_string(ev.minCoeff()));
  const double cut = rel_threshold * std::max(ev.maxCoeff(), 0.0);

  NullSpaceResult out;
  out.gram = gram;
  std::vector<Eigen::Index> null_idx;
  for (Eigen::Index i = 0; i < n; ++i)
    if (ev[i] <= cut) null_idx.push_back(i);
  out.dim = Eigen::Index(null_idx.size());
  out.null_coords.resize(n, out.dim);
  for (Eigen::Index k = 0; k < out.dim; ++k)
    out.null_coords.col(k) = es.eigenvectors().col(null_idx[std::size_t(k)]);

  // materialize elements and verify S(v,v) vanishes in the C*-norm
  const Eigen::Index dim_coords = basis.front().coord_dim();
  for (Eigen::Index k = 0; k < out.dim; ++k) {
    ComplexVector c = ComplexVector::Zero(dim_coords);
    for (Eigen::Index i = 0; i < n; ++i)
      c += out.null_coords(i, k) * basis[std::size_t(i)].coordinates();
    Element v = basis.front().from_coordinates(c);
    out.max_self_pairing = std::max(out.max_self_pairing, cnorm(s(v, v)));
    out.null_elements.push_back(std::move(v));
  }
  return out;
}

}  // namespace opalg
