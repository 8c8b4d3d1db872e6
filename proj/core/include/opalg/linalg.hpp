// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <limits>

namespace opalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Square complex matrix validated Hermitian on construction
// (max |M - M*| entry <= tol, default 1e-12; throws std::invalid_argument).
// The stored matrix is symmetrized so downstream eigensolves are exact
// about self-adjointness.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMatrix m, double tol = 1e-12);

  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  ComplexMatrix mat_;
};

ComplexMatrix adjoint_of(const ComplexMatrix& m);

// Singular values, descending.
Eigen::VectorXd singular_values(const ComplexMatrix& m);

// Schatten p-norm for p in [1, inf]; p = inf gives the operator norm.
double schatten_norm(const ComplexMatrix& m, double p);

double operator_norm(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);

// Eigenvalues ascending (Hermitian input).
Eigen::VectorXd eigenvalues(const HermitianMatrix& h);

bool is_psd(const HermitianMatrix& h, double tol = 1e-10);

// Eigenvalue-wise function calculus f(H). Requires H PSD within tol (the
// domain handed to f is the nonnegative axis); throws std::domain_error
// otherwise. Eigenvalues in [-tol, 0) are clamped to 0 before applying f.
HermitianMatrix mat_fun(const HermitianMatrix& h,
                        const std::function<double(double)>& f,
                        double psd_tol = 1e-10);

// Spectral projection onto eigenspaces with eigenvalue strictly above s.
// Eigenvalues within tie_tol of s are excluded and flagged.
struct SpectralProjection {
  ComplexMatrix projection;
  int rank = 0;
  bool tie_warning = false;  // some eigenvalue was within tie_tol of s
};
SpectralProjection spectral_projection(const HermitianMatrix& h, double s,
                                       double tie_tol = 1e-12);

}  // namespace opalg
