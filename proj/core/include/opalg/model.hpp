// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "opalg/element.hpp"
#include "opalg/rng.hpp"

namespace opalg {

// A finite model of a (quasi) *-algebra with distinguished core and a nested
// approximate identity schedule. Non-unitality is modeled by truncation: the
// top identity element acts as the exact unit of the truncated carrier.
struct AlgebraModel {
  std::string name;
  Element::Kind kind = Element::Kind::Matrix;
  std::string norm_name;  // which norm the declared bounds refer to

  std::function<double(const Element&)> norm;
  std::function<Element(const Element&)> involution;
  std::function<Element(const Element&, const Element&)> module_product;
  std::function<bool(const Element&)> in_core;

  // e_1 <= e_2 <= ... <= e_N (strongly idempotent: e_m e_k = e_m for m <= k).
  std::vector<Element> identity;

  // Basis spanning the finite model, in coordinate order (used by GNS /
  // null-space computations on small models).
  std::function<std::vector<Element>()> basis;

  std::function<Element(Rng&)> random_element;
  std::function<Element(Rng&)> random_core;
};

// Schatten-p model: M_n with the p-norm, identities P_m = diag(1..1,0..0).
AlgebraModel make_schatten_model(int n, double p);

// L2(R) truncated to [-x_max, x_max]: grid functions with the trapezoid
// L2 norm, identities = indicators of [-m x_max/levels, m x_max/levels].
AlgebraModel make_grid_l2_model(double x_max, std::size_t points, int levels = 8);

// Truncated l2(C(Omega)): sequences of n grid functions on Omega = [g.start,
// g.end], norm sup_x sqrt(sum_n |f_n(x)|^2), identities (1,..,1,0,..,0).
AlgebraModel make_seqfun_model(Grid g, int n);

// Matrix model with the Frobenius (trace L2) norm; identities default to the
// diagonal projections or are caller-supplied (validated nested).
AlgebraModel make_ncl2_model(int n, std::optional<std::vector<ComplexMatrix>>
                                        projections = std::nullopt);

// Spectral truncation sequence of a PSD matrix: for each cutoff c (strictly
// decreasing, positive) P = projection onto spectrum > c and the residual
// ||W(I-P)||_p, plus the provable bound count^(1/p) * c.
struct ProjectorStep {
  double cutoff = 0.0;
  ComplexMatrix projection;
  int rank = 0;
  double residual = 0.0;
  int excluded_count = 0;   // eigenvalues <= cutoff
  double bound = 0.0;       // excluded_count^(1/p) * cutoff
  bool tie_warning = false;
};
std::vector<ProjectorStep> projector_sequence(const HermitianMatrix& w, double p,
                                              const std::vector<double>& cutoffs);

// Residual traces r_m = ||a - a e_m|| (norm mode) or the form seminorm of
// a - a e_m (form mode) for a panel of elements; also validates strong
// idempotency of the schedule.
struct ApproximateIdentityRow {
  std::string label;
  std::vector<double> residuals;       // indexed by identity level
  std::size_t monotone_from = 0;       // first index from which non-increasing
  double final_residual = 0.0;
  bool pass = false;
};
struct ApproximateIdentityReport {
  double idempotency_defect = 0.0;     // max ||e_m e_k - e_m||, m <= k
  std::vector<ApproximateIdentityRow> rows;
  bool pass = false;
};

using FormEvaluator = std::function<class CStarValue(const Element&, const Element&)>;

ApproximateIdentityReport check_approximate_identity(
    const AlgebraModel& model, const std::vector<Element>& panel,
    const std::vector<std::string>& labels, double tol);

ApproximateIdentityReport check_approximate_identity_form(
    const AlgebraModel& model, const FormEvaluator& s,
    const std::vector<Element>& panel, const std::vector<std::string>& labels,
    double tol);

}  // namespace opalg
