// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opalg/cstar.hpp"
#include "opalg/element.hpp"
#include "opalg/model.hpp"

namespace opalg {

// Positive sesquilinear C*-valued form: linear in the first argument,
// conjugate-linear in the second. Evaluation is delegated to the supplied
// closure; the class carries the codomain description and an optional
// declared bound M with ||S(c,d)|| <= M ||c|| ||d|| in the model norm.
class PosSesqForm {
 public:
  using Evaluator = std::function<CStarValue(const Element&, const Element&)>;

  PosSesqForm(std::string name, CodomainDesc codomain, Evaluator eval,
              std::optional<double> declared_bound = std::nullopt)
      : name_(std::move(name)), codomain_(codomain), eval_(std::move(eval)),
        declared_bound_(declared_bound) {}

  const std::string& name() const { return name_; }
  const CodomainDesc& codomain() const { return codomain_; }
  std::optional<double> declared_bound() const { return declared_bound_; }

  CStarValue operator()(const Element& a, const Element& b) const { return eval_(a, b); }

  // ||a||_S = sqrt(||S(a,a)||_C). Throws FormNotPositiveError if S(a,a) is
  // not positive within tol.
  double quasi_norm(const Element& a, double positivity_tol = 1e-10) const;

 private:
  std::string name_;
  CodomainDesc codomain_;
  Evaluator eval_;
  std::optional<double> declared_bound_;
};

// |S(a,b)| <= 2 sqrt(S(a,a)) sqrt(S(b,b)) in C*-norms; the constant drops
// to 1 when the codomain is commutative.
struct SchwarzReport {
  double lhs = 0.0;
  double rhs_general = 0.0;  // constant 2
  double rhs_commutative = 0.0;
  bool pass_general = false;
  std::optional<bool> pass_commutative;  // only when codomain commutative
};
SchwarzReport check_schwarz(const PosSesqForm& s, const Element& a, const Element& b,
                            double rtol = 1e-9);

// ||a+b||_S <= sqrt(2) (||a||_S + ||b||_S); plain triangle when commutative.
struct TriangleReport {
  double lhs = 0.0;
  double rhs_q3 = 0.0;
  double rhs_plain = 0.0;
  bool pass_q3 = false;
  std::optional<bool> pass_plain;
};
TriangleReport check_triangle(const PosSesqForm& s, const Element& a, const Element& b,
                              double rtol = 1e-9);

// Module invariance S(a x, y) = S(x, a* y) on sampled a in A, x, y in the core.
struct InvarianceReport {
  double max_defect = 0.0;
  int samples = 0;
  bool pass = false;
};
InvarianceReport check_invariance(const PosSesqForm& s, const AlgebraModel& model,
                                  Rng& rng, int samples, double tol = 1e-8);

// Null space N_S = {a : S(a,a) = 0} over the span of `basis`, computed from
// the scalarized Gram G_ij = tau(S(a_i, a_j)) (tau faithful positive, so
// ker G = N_S exactly). Throws FormNotPositiveError when G has an eigenvalue
// below -1e-10 * scale.
struct NullSpaceResult {
  Eigen::MatrixXcd null_coords;   // basis-coordinate columns spanning N_S
  std::vector<Element> null_elements;
  Eigen::Index dim = 0;
  double max_self_pairing = 0.0;  // max ||S(v,v)|| over returned vectors
  Eigen::MatrixXcd gram;          // scalarized Gram (kept for GNS reuse)
};
NullSpaceResult null_space(const PosSesqForm& s, const std::vector<Element>& basis,
                           double rel_threshold = 1e-10);

}  // namespace opalg
