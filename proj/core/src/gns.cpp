// SPDX-License-Identifier: Apache-2.0
#include "opalg/gns.hpp"

#include <cmath>

#include "opalg/errors.hpp"

namespace opalg {

ComplexVector GnsData::quotient_coords(const Element& y) const {
  const Eigen::Index r = quotient_dim();
  ComplexVector rhs(r);
  for (Eigen::Index j = 0; j < r; ++j)
    rhs[j] = (*s)(y, representative(j)).scalarize();
  // Solve sum_i xi_i tau(S(q_i, q_j)) = tau(S(y, q_j)). The coefficient
  // matrix is quotient_gram transposed = conj(quotient_gram) (Hermitian), so
  // solve the conjugated system with the cached factorization.
  return solver_.solve(rhs.conjugate()).conjugate();
}

Eigen::MatrixXcd GnsData::pi(const Element& a) const {
  const Eigen::Index r = quotient_dim();
  Eigen::MatrixXcd m(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    m.col(i) = quotient_coords(module_product(a, representative(i)));
  return m;
}

CStarValue GnsData::ip(const ComplexVector& xi, const ComplexVector& eta) const {
  const Eigen::Index r = quotient_dim();
  CStarValue acc = CStarValue::zero_like(s->codomain());
  for (Eigen::Index i = 0; i < r; ++i) {
    if (xi[i] == Complex{0.0, 0.0}) continue;
    for (Eigen::Index j = 0; j < r; ++j) {
      const Complex w = xi[i] * std::conj(eta[j]);
      if (w == Complex{0.0, 0.0}) continue;
      acc = acc + w * ip_table[std::size_t(i * r + j)];
    }
  }
  return acc;
}

double GnsData::snorm(const ComplexVector& xi) const {
  return std::sqrt(std::max(0.0, cnorm(ip(xi, xi))));
}

GnsData build_gns(const AlgebraModel& model, const PosSesqForm& s, Rng& rng,
                  int invariance_samples, double invariance_tol,
                  double rel_threshold) {
  const InvarianceReport inv =
      check_invariance(s, model, rng, invariance_samples, invariance_tol);
  if (!inv.pass)
    throw NotInvariantError(s.name() + ": invariance defect " +
                            std::to_string(inv.max_defect));

  GnsData g;
  g.s = s;
  g.module_product = model.module_product;
  g.involution = model.involution;
  g.basis = model.basis();
  g.identity = model.identity;

  NullSpaceResult ns = null_space(s, g.basis, rel_threshold);
  g.gram = std::move(ns.gram);
  g.null_coords = std::move(ns.null_coords);
  g.null_dim = ns.dim;

  // Pivoted Cholesky on the Gram: greedy largest-diagonal pivots give a
  // well-conditioned principal submatrix whose cosets span the quotient.
  const Eigen::Index n = g.gram.rows();
  const Eigen::Index r = n - g.null_dim;
  if (r == 0) throw DegenerateFormError(s.name() + ": the form vanishes on the span");
  Eigen::MatrixXcd work = g.gram;
  std::vector<bool> used(std::size_t(n), false);
  for (Eigen::Index step = 0; step < r; ++step) {
    Eigen::Index best = -1;
    double best_diag = -1.0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (!used[std::size_t(i)] && work(i, i).real() > best_diag) {
        best_diag = work(i, i).real();
        best = i;
      }
    if (best < 0 || best_diag <= 0.0)
      throw DegenerateFormError(s.name() + ": rank collapse during pivoting");
    used[std::size_t(best)] = true;
    g.pivots.push_back(best);
    const ComplexVector col = work.col(best);
    work -= (col * col.adjoint()) / work(best, best);
  }

  g.quotient_gram.resize(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j)
      g.quotient_gram(i, j) = g.gram(g.pivots[std::size_t(i)], g.pivots[std::size_t(j)]);
  g.solver_.compute(g.quotient_gram);
  if (g.solver_.info() != Eigen::Success)
    throw DegenerateFormError(s.name() + ": quotient Gram not factorizable");

  g.ip_table.reserve(std::size_t(r * r));
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j)
      g.ip_table.push_back(s(g.representative(i), g.representative(j)));

  for (const Element& e : g.identity) g.epsilons.push_back(g.quotient_coords(e));
  const ComplexVector& top = g.epsilons.back();
  for (const ComplexVector& eps : g.epsilons)
    g.epsilon_gap_trace.push_back(cnorm(g.ip(top - eps, top - eps)));
  return g;
}

RepresentationReport verify_representation(const GnsData& g, const AlgebraModel& model,
                                           Rng& rng, int samples, double tol) {
  RepresentationReport rep;
  rep.samples = samples;
  const Eigen::Index r = g.quotient_dim();
  for (int t = 0; t < samples; ++t) {
    const Element a = model.random_element(rng);
    const Element x = model.random_core(rng);
    const Eigen::MatrixXcd pia = g.pi(a);
    const Eigen::MatrixXcd pix = g.pi(x);
    const Eigen::MatrixXcd piax = g.pi(model.module_product(a, x));
    rep.max_module_defect =
        std::max(rep.max_module_defect, operator_norm(piax - pia * pix));

    ComplexVector xi(r), eta(r);
    for (Eigen::Index i = 0; i < r; ++i) { xi[i] = rng.cnormal(); eta[i] = rng.cnormal(); }
    const Eigen::MatrixXcd pistar = g.pi(model.involution(a));
    rep.max_adjoint_defect = std::max(
        rep.max_adjoint_defect, cnorm(g.ip(pia * xi, eta) - g.ip(xi, pistar * eta)));
  }
  rep.pass = rep.max_module_defect <= tol && rep.max_adjoint_defect <= tol;
  return rep;
}

EpsilonReport verify_epsilon_relations(const GnsData& g, const std::vector<Element>& panel,
                                       double tol) {
  EpsilonReport rep;
  const std::size_t levels = g.epsilons.size();

  // pi(e_m) eps_k = eps_m for m <= k (strong idempotency on cosets)
  for (std::size_t m = 0; m < levels; ++m) {
    const Eigen::MatrixXcd pie = g.pi(g.identity[m]);
    for (std::size_t k = m; k < levels; ++k)
      rep.max_relation_defect = std::max(
          rep.max_relation_defect,
          g.snorm(ComplexVector(pie * g.epsilons[k] - g.epsilons[m])));
  }

  // Double-limit table T(m,k) per panel element.
  for (const Element& a : panel) {
    const Eigen::MatrixXcd pia = g.pi(a);
    Eigen::MatrixXd table(levels, levels);
    for (std::size_t m = 0; m < levels; ++m)
      for (std::size_t k = 0; k < levels; ++k) {
        const ComplexVector d = pia * (g.epsilons[k] - g.epsilons[m]);
        table(Eigen::Index(m), Eigen::Index(k)) = cnorm(g.ip(d, d));
      }
    std::vector<double> tail(levels);
    for (std::size_t m = 0; m < levels; ++m)
      tail[m] = table(Eigen::Index(m), Eigen::Index(levels - 1));
    for (std::size_t m = 0; m + 1 < levels; ++m)
      if (!(tail[m + 1] < tail[m]) && tail[m] > tol)
        rep.tails_strictly_decreasing = false;
    if (levels >= 2)
      for (std::size_t m = 0; m < levels; ++m)
        rep.max_column_stabilization = std::max(
            rep.max_column_stabilization,
            std::abs(table(Eigen::Index(m), Eigen::Index(levels - 1)) -
                     table(Eigen::Index(m), Eigen::Index(levels - 2))));
    rep.max_final_tail = std::max(rep.max_final_tail, tail[levels - 1]);
    rep.double_limit.push_back(std::move(table));
    rep.diagonal_tail.push_back(std::move(tail));
  }
  rep.pass = rep.max_relation_defect <= tol && rep.max_final_tail <= tol;
  return rep;
}

ReconstructionReport reconstruct_form(const GnsData& g, const Element& a,
                                      const Element& b, double tol) {
  ReconstructionReport rep;
  const CStarValue target = (*g.s)(a, b);
  const Eigen::MatrixXcd pia = g.pi(a);
  const Eigen::MatrixXcd pib = g.pi(b);
  for (const ComplexVector& eps : g.epsilons) {
    const CStarValue v = g.ip(pia * eps, pib * eps);
    rep.defects.push_back(cnorm(v - target));
  }
  rep.defect_top = rep.defects.back();
  rep.monotone_from = rep.defects.size() - 1;
  for (std::size_t m = 0; m + 1 < rep.defects.size(); ++m) {
    bool ok = true;
    for (std::size_t k = m; k + 1 < rep.defects.size(); ++k)
      if (rep.defects[k + 1] > rep.defects[k] + 1e-12) { ok = false; break; }
    if (ok) { rep.monotone_from = m; break; }
  }
  rep.pass = rep.defect_top <= tol;
  return rep;
}

LinearReconstructionReport reconstruct_linear(const GnsData& g,
                                              const PositiveLinearMap& omega,
                                              LimitMode mode,
                                              const std::vector<Element>& panel,
                                              double tol) {
  LinearReconstructionReport rep;

  // The quotient must have been built from S(a,b) = omega(b* a).
  for (std::size_t i = 0; i + 1 < panel.size(); ++i) {
    const Element& a = panel[i];
    const Element& b = panel[i + 1];
    const CStarValue lhs = (*g.s)(a, b);
    const CStarValue rhs = omega.apply(g.module_product(g.involution(b), a));
    rep.consistency_defect = std::max(rep.consistency_defect, cnorm(lhs - rhs));
  }
  if (rep.consistency_defect > 1e-6)
    throw InconsistentInputError(omega.name +
                                 ": form does not match omega(b* a), defect " +
                                 std::to_string(rep.consistency_defect));

  const std::size_t levels = g.epsilons.size();
  const ComplexVector& top = g.epsilons.back();
  for (const Element& a : panel) {
    const Eigen::MatrixXcd pia = g.pi(a);
    const CStarValue wa = omega.apply(a);
    if (mode == LimitMode::Single) {
      rep.max_single_defect =
          std::max(rep.max_single_defect, cnorm(wa - g.ip(pia * top, top)));
    } else {
      Eigen::MatrixXd table(levels, levels);
      for (std::size_t m = 0; m < levels; ++m)
        for (std::size_t k = 0; k < levels; ++k)
          table(Eigen::Index(m), Eigen::Index(k)) =
              cnorm(wa - g.ip(pia * g.epsilons[m], g.epsilons[k]));
      rep.max_double_defect =
          std::max(rep.max_double_defect,
                   table(Eigen::Index(levels - 1), Eigen::Index(levels - 1)));
      rep.tables.push_back(std::move(table));
    }
  }
  // cross reconstruction omega(b* a) = <pi(a) eps, pi(b) eps> at the top
  for (std::size_t i = 0; i + 1 < panel.size(); ++i) {
    const Element& a = panel[i];
    const Element& b = panel[i + 1];
    const CStarValue lhs = omega.apply(g.module_product(g.involution(b), a));
    const CStarValue rhs = g.ip(g.pi(a) * top, g.pi(b) * top);
    rep.max_cross_defect = std::max(rep.max_cross_defect, cnorm(lhs - rhs));
  }
  const double headline =
      mode == LimitMode::Single ? rep.max_single_defect : rep.max_double_defect;
  rep.pass = headline <= tol && rep.max_cross_defect <= tol;
  return rep;
}

MapNormResult map_norm(const PositiveLinearMap& omega, NormMethod method,
                       const AlgebraModel* model, Rng* rng, int samples) {
  MapNormResult out;
  switch (method) {
    case NormMethod::ExactFormula: {
      if (!omega.trace_weight)
        throw UnsupportedMethodError(omega.name + ": no exact norm formula available");
      const ComplexMatrix& w = *omega.trace_weight;
      if (omega.domain_norm_name == "operator") {
        out.value = w.trace().real();
        out.kind = NormKind::Exact;
        out.method = "trace-weight/operator-domain";
        return out;
      }
      if (omega.schatten_p) {
        const double p = *omega.schatten_p;
        const double q = (p == 1.0) ? kInfinity : p / (p - 1.0);
        out.value = schatten_norm(w, q);
        out.kind = NormKind::Exact;
        out.method = "trace-weight/schatten-dual";
        return out;
      }
      throw UnsupportedMethodError(omega.name + ": exact formula needs a named domain norm");
    }
    case NormMethod::UnitarySampling: {
      if (!model || !rng || model->kind != Element::Kind::Matrix)
        throw UnsupportedMethodError(omega.name + ": unitary sampling needs a matrix model");
      double best = 0.0;
      for (int t = 0; t < samples; ++t) {
        Element a = model->random_element(*rng);
        Eigen::HouseholderQR<ComplexMatrix> qr(a.mat());
        ComplexMatrix u = qr.householderQ();
        best = std::max(best, cnorm(omega.apply(Element::matrix(std::move(u)))));
      }
      out.value = best;
      out.kind = NormKind::Estimate;
      out.method = "unitary-sampling";
      return out;
    }
    case NormMethod::RandomBall: {
      if (!model || !rng)
        throw UnsupportedMethodError(omega.name + ": random-ball sampling needs a model");
      double best = 0.0;
      for (int t = 0; t < samples; ++t) {
        const Element a = model->random_element(*rng);
        const double na = omega.domain_norm ? omega.domain_norm(a) : model->norm(a);
        if (na <= 0.0) continue;
        best = std::max(best, cnorm(omega.apply(a)) / na);
      }
      out.value = best;
      out.kind = NormKind::Estimate;
      out.method = "random-ball";
      return out;
    }
  }
  throw UnsupportedMethodError("map_norm: unknown method");
}

NormInequalityReport check_norm_inequality(const PositiveLinearMap& omega,
                                           const MapNormResult& norm_of_omega,
                                           const AlgebraModel& model, Rng& rng,
                                           int samples, double rtol,
                                           double adjoint_tol) {
  NormInequalityReport rep;
  rep.samples = samples;
  const bool commutative = omega.codomain.commutative();
  for (int t = 0; t < samples; ++t) {
    const Element a = model.random_element(rng);
    const Element astar = model.involution(a);
    const double wa = cnorm(omega.apply(a));
    const double wastar = cnorm(omega.apply(astar));
    const double waa = cnorm(omega.apply(model.module_product(astar, a)));
    const double scale = std::max(1.0, wa * wa);
    rep.max_adjoint_defect = std::max(rep.max_adjoint_defect, std::abs(wa - wastar));
    const double lhs4 = 4.0 * norm_of_omega.value * waa;
    rep.max_violation_c4 =
        std::max(rep.max_violation_c4, (wa * wa - lhs4) / scale);
    if (commutative) {
      const double lhs1 = norm_of_omega.value * waa;
      rep.max_violation_c1 =
          std::max(rep.max_violation_c1, (wa * wa - lhs1) / scale);
    }
  }
  rep.max_violation_c4 = std::max(0.0, rep.max_violation_c4);
  rep.max_violation_c1 = std::max(0.0, rep.max_violation_c1);
  const bool violated = rep.max_violation_c4 > rtol ||
                        (commutative && rep.max_violation_c1 > rtol) ||
                        rep.max_adjoint_defect > adjoint_tol;
  using V = NormInequalityReport::Verdict;
  if (!violated)
    rep.verdict = V::Pass;
  else
    rep.verdict = (norm_of_omega.kind == NormKind::Exact) ? V::Fail : V::Inconclusive;
  return rep;
}

double pi_operator_norm(const GnsData& g, const Eigen::MatrixXcd& pi_a) {
  if (g.s->codomain().kind != CodomainDesc::Kind::Scalar)
    throw UnsupportedMethodError("pi_operator_norm: scalar codomain required");
  // ||pi(a)||^2 = lambda_max(G^{-1/2} pi* G pi G^{-1/2}) with G the quotient
  // Gram (Hermitian positive definite by pivot construction).
  Eigen::LLT<Eigen::MatrixXcd> llt(g.quotient_gram);
  if (llt.info() != Eigen::Success)
    throw NumericalError("pi_operator_norm: quotient Gram not positive definite");
  const Eigen::MatrixXcd l = llt.matrixL();
  const Eigen::MatrixXcd m = pi_a.adjoint() * g.quotient_gram * pi_a;
  // whitened = L^{-1} M L^{-*}
  const Eigen::MatrixXcd li = l.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXcd::Identity(l.rows(), l.cols()));
  const Eigen::MatrixXcd whitened = li * m * li.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      0.5 * (whitened + whitened.adjoint().eval()), Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace opalg
