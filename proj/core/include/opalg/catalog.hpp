// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "opalg/gns.hpp"

namespace opalg {

// Sampled integral kernel on x_grid x t_grid: scalar k(x,t) or operator
// valued K(x,t) (one square block per sample pair). Optional samples of the
// partial derivative in x back the derivative identity check.
struct KernelSpec {
  enum class Kind { Scalar, Operator };

  Kind kind = Kind::Scalar;
  Grid x_grid{};
  Grid t_grid{};
  Eigen::Index dim = 1;                         // block size (Operator)
  Eigen::MatrixXcd scalar_samples;              // row = x index, col = t index
  std::vector<ComplexMatrix> operator_samples;  // row-major ix * nt + it
  std::optional<Eigen::MatrixXcd> scalar_dx;
  std::optional<std::vector<ComplexMatrix>> operator_dx;

  // Scalar kernels: true when every sample is real nonnegative (checked at
  // construction). Operator kernels: caller-declared hypothesis that K(x,t)
  // maps positive values to positive values; it cannot be decided from the
  // samples alone, so it is recorded as stated.
  bool positive_action = false;

  static KernelSpec scalar_from(Grid x, Grid t,
                                const std::function<Complex(double, double)>& k);
  static KernelSpec operator_from(Grid x, Grid t, Eigen::Index dim,
                                  const std::function<ComplexMatrix(double, double)>& k,
                                  bool positive_action);

  void sample_dx(const std::function<Complex(double, double)>& dk);
  void sample_dx_blocks(const std::function<ComplexMatrix(double, double)>& dk);

  Complex at(std::size_t ix, std::size_t it) const;
  const ComplexMatrix& block(std::size_t ix, std::size_t it) const;

  // sup |k| resp. sup ||K(x,t)||_op over all samples.
  double sup_norm() const;
};

// omega(f)(x) = sum_n w_n(x) f_n(x) on a sequence model. Declared bound
// M = sup_x ||{w_n(x)}||_2, from Cauchy-Schwarz in the sequence index.
// Throws std::invalid_argument on a negative weight sample.
PositiveLinearMap weighted_sum_map(const std::vector<Eigen::VectorXd>& w,
                                   const AlgebraModel& model);

// S(f,g) = integral f conj(g) v dt with v bounded nonnegative, scalar valued,
// over the grid model. Declared bound sup v.
PosSesqForm weighted_form(const Eigen::VectorXd& v, const AlgebraModel& model);

// S_k(f,g)(x) = integral k(x,t) f(t) conj(g(t)) dt as a sampled function of
// x. Positive when k >= 0. Declared bound sup |k|.
PosSesqForm kernel_form(const KernelSpec& spec);

// theta(f)(x) = integral k(x,t) w(t) f(t) dt with w bounded nonnegative.
// Declared bound sup_{x,t} |k(x,t) w(t)|, against the L2 domain norm.
PositiveLinearMap theta_map(const KernelSpec& spec, const Eigen::VectorXd& w);

// Carrier for the operator-valued kernel form: matrix-valued grid functions
// with the Bochner L2 norm (pointwise operator norms). Multipliers sampled
// by random_element are scalar functions - those are exactly the elements
// the invariance identity S(a f, g) = S(f, a* g) holds for, since scalars
// commute with the kernel blocks; random_core yields matrix functions.
AlgebraModel make_operator_kernel_model(Grid t_grid, int dim);

// S_K(f,g)(x) = integral K(x,t) f(t) g(t)* dt, matrix-function valued.
// Scalar grid-function arguments are promoted to scalar multiples of the
// identity block. Declared bound sup ||K||.
PosSesqForm operator_kernel_form(const KernelSpec& spec);

struct DerivativeReport {
  std::vector<double> discrepancies;  // interior x samples only
  double max_discrepancy = 0.0;
  double spacing = 0.0;               // x-grid spacing used by the differences
  bool pass = false;
};
// Central x-differences of S_K(f,g) against the quadrature of dK/dx f g*.
// Needs derivative samples on the KernelSpec; agreement is O(spacing^2).
DerivativeReport derivative_check(const KernelSpec& spec, const Element& f,
                                  const Element& g, double tol);

struct OperatorKernelMap {
  PositiveLinearMap map;    // A -> (x -> integral K(x,t) A(t) dt)
  bool c0_range = false;    // sup_t ||K(x,.)|| decays below tol at the x ends
  double edge_value = 0.0;  // max of sup_t ||K(x,t)|| at the two x ends
};
OperatorKernelMap omega_k_map(const KernelSpec& spec, double c0_tol = 1e-6);

struct SchattenTraceMap {
  PositiveLinearMap map;               // A -> (t -> tr(A W_t)) on t_grid
  Grid t_grid{};
  std::vector<ComplexMatrix> weights;  // W_t per grid sample
  std::string family_note;             // records the infinite-family intent
};
// W_t = sum_j lambda_j g_j(t) |e_j><e_j| on the matrix model (p > 2).
// lambda must be strictly decreasing positive; the sampled g_j must be
// nonnegative and nested (g_i >= g_j pointwise for i <= j). Declared bound
// M = max_t ||W_t||_{p/(p-2)}, the Hoelder constant for
// ||omega(d* c)||_inf <= M ||d||_p ||c||_p.
SchattenTraceMap schatten_trace_map(const std::vector<double>& lambda,
                                    const std::vector<Eigen::VectorXd>& g_family,
                                    Grid t_grid, const AlgebraModel& model,
                                    double p);

// omega(A) = tr(A W) with W PSD on a matrix model. Carries the data for the
// exact norm formula: tr W against the operator-norm domain, or the dual
// Schatten norm ||W||_{p/(p-1)} when a Schatten-p domain is named. The
// declared two-argument bound is tr W resp. ||W||_{p/(p-2)} (p > 2 only).
PositiveLinearMap trace_map(const HermitianMatrix& w, const AlgebraModel& model,
                            std::optional<double> schatten_p = std::nullopt);

struct Ncl2Map {
  PositiveLinearMap map;  // A -> (x -> tr(A ((I-P)W + W_x)))
  ComplexMatrix w;
  ComplexMatrix projection;               // spectrum of W above the cutoff
  ComplexMatrix tail;                     // (I - P) W
  std::vector<ComplexMatrix> densities;   // (I-P)W + W_x per x sample
  Grid x_grid{};
  bool tie_warning = false;
};
// W_x = f_x(WP) by functional calculus, f_x = linear interpolation of the
// kernel row k(x, .). The kernel's t-grid must cover [0, ||WP||] so that
// eigenvalue evaluation never extrapolates. Declared bound
// M = max_x ||(I-P)W + W_x||_op against the Frobenius domain norm.
Ncl2Map ncl2_map(const HermitianMatrix& w, double cutoff, const KernelSpec& k);

// Quadrature realization of theta(X) = integral tr(X density(t)) A_t dt
// against a caller panel of matrices A_t, one per x-grid sample.
ComplexMatrix theta_gp(const Ncl2Map& m, const Element& x,
                       const std::vector<ComplexMatrix>& panel);

// Diagonal action of omega(X) on a sequence of functions over the same grid:
// (f_1, f_2, ...) -> (omega(X) f_1, omega(X) f_2, ...).
Element tilde_theta_apply(const Ncl2Map& m, const Element& x, const Element& seq);

struct AdjointabilityReport {
  double max_defect = 0.0;  // |<theta(X)f, g> - <f, theta(X*)g>|
  int samples = 0;
  bool pass = false;
};
// Adjointability of the diagonal action w.r.t. the module inner product
// <f,g> = sum_n integral f_n conj(g_n).
AdjointabilityReport check_tilde_adjoint(const Ncl2Map& m,
                                         const AlgebraModel& matrix_model,
                                         const AlgebraModel& seq_model, Rng& rng,
                                         int samples, double tol = 1e-8);

// S(a,b) = omega(b* a) as a form over the map's model.
PosSesqForm induced_form(const PositiveLinearMap& omega, const AlgebraModel& model,
                         std::string name);

struct BoundReport {
  double max_ratio = 0.0;  // ||value|| / (||d|| ||c||) over sampled core pairs
  double bound = 0.0;      // the declared M
  int samples = 0;
  bool pass = false;
};
// ||omega(d* c)|| <= M ||d|| ||c|| on random core pairs.
BoundReport check_declared_bound(const PositiveLinearMap& omega,
                                 const AlgebraModel& model, Rng& rng, int samples,
                                 double rtol = 1e-9);
// ||S(c,d)|| <= M ||c|| ||d|| on random core pairs.
BoundReport check_declared_bound(const PosSesqForm& s, const AlgebraModel& model,
                                 Rng& rng, int samples, double rtol = 1e-9);

}  // namespace opalg
