// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opalg/form.hpp"

namespace opalg {

// Outcome of the quotient construction for an invariant positive form S on a
// finite model: coset coordinates, the induced representation pi, and the
// epsilon vectors (cosets of the approximate identity).
//
// Quotient representatives are chosen by pivoted Cholesky elimination on the
// scalarized Gram: pivot columns index model basis elements whose cosets span
// the quotient with a well-conditioned Gram.
class GnsData {
 public:
  Eigen::Index quotient_dim() const { return Eigen::Index(pivots.size()); }

  // Coordinates of the coset of y in the pivot basis: the unique xi with
  // y - sum_i xi_i q_i in N_S.
  ComplexVector quotient_coords(const Element& y) const;

  // Matrix of pi(a) acting on quotient coordinates via the module action.
  Eigen::MatrixXcd pi(const Element& a) const;

  // C*-valued inner product <xi, eta>_S = sum_ij xi_i conj(eta_j) S(q_i, q_j).
  CStarValue ip(const ComplexVector& xi, const ComplexVector& eta) const;

  // Norm sqrt(||<xi, xi>_S||_C).
  double snorm(const ComplexVector& xi) const;

  const PosSesqForm& form() const { return *s; }
  const Element& representative(Eigen::Index i) const {
    return basis[std::size_t(pivots[std::size_t(i)])];
  }

  std::vector<Element> basis;
  Eigen::MatrixXcd gram;               // scalarized Gram over the model basis
  Eigen::MatrixXcd null_coords;        // columns spanning N_S in basis coords
  Eigen::Index null_dim = 0;
  std::vector<Eigen::Index> pivots;    // quotient representative indices
  Eigen::MatrixXcd quotient_gram;      // pivot principal submatrix of gram
  std::vector<CStarValue> ip_table;    // r x r, row-major: S(q_i, q_j)
  std::vector<Element> identity;       // e_1..e_N copied from the model
  std::vector<ComplexVector> epsilons; // coset coordinates of e_1..e_N
  std::vector<double> epsilon_gap_trace;  // ||<eps_top - eps_m, same>_S||

  std::optional<PosSesqForm> s;
  std::function<Element(const Element&, const Element&)> module_product;
  std::function<Element(const Element&)> involution;

 private:
  friend GnsData build_gns(const AlgebraModel&, const PosSesqForm&, Rng&, int,
                           double, double);
  Eigen::LDLT<Eigen::MatrixXcd> solver_;
};

// Builds the quotient data. Prechecks invariance on sampled triples (throws
// NotInvariantError above invariance_tol), computes N_S (FormNotPositiveError
// if the scalarized Gram is indefinite), and throws DegenerateFormError when
// the quotient is zero-dimensional.
GnsData build_gns(const AlgebraModel& model, const PosSesqForm& s, Rng& rng,
                  int invariance_samples = 50, double invariance_tol = 1e-6,
                  double rel_threshold = 1e-10);

struct RepresentationReport {
  double max_module_defect = 0.0;   // ||pi(a x) - pi(a) pi(x)||
  double max_adjoint_defect = 0.0;  // ||<pi(a)xi,eta> - <xi,pi(a*)eta>||_C
  int samples = 0;
  bool pass = false;
};
RepresentationReport verify_representation(const GnsData& g, const AlgebraModel& model,
                                           Rng& rng, int samples, double tol = 1e-8);

struct EpsilonReport {
  double max_relation_defect = 0.0;         // ||pi(e_m) eps_k - eps_m||_S, m <= k
  std::vector<Eigen::MatrixXd> double_limit;  // per panel element: T(m,k)
  std::vector<std::vector<double>> diagonal_tail;  // T(m, top) per panel element
  double max_column_stabilization = 0.0;    // |T(m, top) - T(m, top-1)|
  double max_final_tail = 0.0;              // T(top, top)
  bool tails_strictly_decreasing = true;
  bool pass = false;
};
// T(m,k) = || <pi(a)(eps_k - eps_m), pi(a)(eps_k - eps_m)>_S ||_C.
EpsilonReport verify_epsilon_relations(const GnsData& g, const std::vector<Element>& panel,
                                       double tol = 1e-10);

struct ReconstructionReport {
  std::vector<double> defects;  // ||<pi(a)eps_m, pi(b)eps_m>_S - S(a,b)||_C
  double defect_top = 0.0;
  std::size_t monotone_from = 0;
  bool pass = false;
};
ReconstructionReport reconstruct_form(const GnsData& g, const Element& a,
                                      const Element& b, double tol = 1e-8);

// Positive linear map omega: A -> C with optional structure used by
// map_norm's exact formulas and the declared two-argument bound
// ||omega(d* c)|| <= M ||d|| ||c|| in the named domain norm.
struct PositiveLinearMap {
  std::string name;
  CodomainDesc codomain;
  std::function<CStarValue(const Element&)> apply;
  std::function<double(const Element&)> domain_norm;
  std::string domain_norm_name;  // "operator" | "schatten-p" | "l2" | ...
  std::optional<double> declared_bound;
  std::optional<ComplexMatrix> trace_weight;  // set when omega = tr(. W), W PSD
  std::optional<double> schatten_p;           // set when the domain norm is ||.||_p
};

enum class LimitMode { Single, Double };

struct LinearReconstructionReport {
  double consistency_defect = 0.0;  // max ||S(a,b) - omega(b* a)|| on samples
  double max_single_defect = 0.0;   // ||omega(a) - <pi(a)eps_top, eps_top>||
  double max_double_defect = 0.0;   // ||omega(a) - <pi(a)eps_m, eps_k>|| at top
  double max_cross_defect = 0.0;    // ||omega(b* a) - <pi(a)eps, pi(b)eps>||
  std::vector<Eigen::MatrixXd> tables;  // per panel element: D(m,k)
  bool pass = false;
};
// Requires g built from S(a,b) = omega(b* a); throws InconsistentInputError
// when the sampled consistency defect exceeds 1e-6.
LinearReconstructionReport reconstruct_linear(const GnsData& g,
                                              const PositiveLinearMap& omega,
                                              LimitMode mode,
                                              const std::vector<Element>& panel,
                                              double tol = 1e-8);

enum class NormKind { Exact, UpperBound, Estimate };
enum class NormMethod { ExactFormula, UnitarySampling, RandomBall };

struct MapNormResult {
  double value = 0.0;
  NormKind kind = NormKind::Estimate;
  std::string method;
};
// ExactFormula covers omega = tr(. W), W PSD: tr W on the operator-norm
// domain, ||W||_q (1/p + 1/q = 1) on a Schatten-p domain. Sampling methods
// need a model and RNG and are tagged Estimate. Throws
// UnsupportedMethodError when the request cannot be honored.
MapNormResult map_norm(const PositiveLinearMap& omega, NormMethod method,
                       const AlgebraModel* model = nullptr, Rng* rng = nullptr,
                       int samples = 200);

struct NormInequalityReport {
  // Violations are relative: (lhs - rhs) / max(1, lhs), clamped at zero,
  // with lhs = ||omega(a)||^2.
  double max_violation_c4 = 0.0;  // rhs = 4 ||omega|| ||omega(a* a)||
  double max_violation_c1 = 0.0;  // commutative-codomain variant, constant 1
  double max_adjoint_defect = 0.0;  // | ||omega(a*)|| - ||omega(a)|| |
  int samples = 0;
  enum class Verdict { Pass, Fail, Inconclusive } verdict = Verdict::Pass;
};
// Violations are only declared (Fail) when norm_of_omega.kind == Exact;
// otherwise failed inequalities yield Inconclusive.
NormInequalityReport check_norm_inequality(const PositiveLinearMap& omega,
                                           const MapNormResult& norm_of_omega,
                                           const AlgebraModel& model, Rng& rng,
                                           int samples, double rtol = 1e-9,
                                           double adjoint_tol = 1e-8);

// Exact operator norm of pi(a) on the quotient for scalar codomains: square
// root of the largest generalized eigenvalue of (pi* G pi, G) with G the
// quotient Gram. Throws UnsupportedMethodError for non-scalar codomains.
double pi_operator_norm(const GnsData& g, const Eigen::MatrixXcd& pi_a);

}  // namespace opalg
