// SPDX-License-Identifier: Apache-2.0
#include "opalg/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace opalg {

HermitianMatrix::HermitianMatrix(ComplexMatrix m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("HermitianMatrix: square matrix required");
  if (!m.allFinite())
    throw std::invalid_argument("HermitianMatrix: non-finite entries");
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (defect > tol)
    throw std::invalid_argument("HermitianMatrix: adjoint defect " +
                                std::to_string(defect) + " exceeds tolerance");
  mat_ = 0.5 * (m + m.adjoint().eval());
}

ComplexMatrix adjoint_of(const ComplexMatrix& m) { return m.adjoint(); }

Eigen::VectorXd singular_values(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

double schatten_norm(const ComplexMatrix& m, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("schatten_norm: p must be >= 1");
  if (!m.allFinite()) throw std::invalid_argument("schatten_norm: non-finite entries");
  if (p == 2.0) return m.norm();  // Frobenius, no SVD needed
  const Eigen::VectorXd sv = singular_values(m);
  if (p == kInfinity) return sv.size() ? sv[0] : 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv[i], p);
  return std::pow(acc, 1.0 / p);
}

double operator_norm(const ComplexMatrix& m) { return schatten_norm(m, kInfinity); }

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

Eigen::VectorXd eigenvalues(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

bool is_psd(const HermitianMatrix& h, double tol) {
  return eigenvalues(h).minCoeff() >= -tol;
}

HermitianMatrix mat_fun(const HermitianMatrix& h,
                        const std::function<double(double)>& f, double psd_tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() < -psd_tol)
    throw std::domain_error("mat_fun: matrix is not PSD within tolerance");
  Eigen::VectorXd fev(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) fev[i] = f(std::max(ev[i], 0.0));
  ComplexMatrix out = es.eigenvectors() * fev.asDiagonal() *
                      es.eigenvectors().adjoint();
  // symmetrize away rounding before revalidation
  return HermitianMatrix(0.5 * (out + out.adjoint().eval()), 1e-9);
}

SpectralProjection spectral_projection(const HermitianMatrix& h, double s,
                                       double tie_tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
  const Eigen::VectorXd ev = es.eigenvalues();
  SpectralProjection out;
  out.projection = ComplexMatrix::Zero(h.dim(), h.dim());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i] - s) <= tie_tol) {
      // Near-tie: excluded by the strict-inequality convention, flagged so
      // callers can tell the cut sits on an eigenvalue.
      out.tie_warning = true;
      continue;
    }
    if (ev[i] > s) {
      out.projection += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
      ++out.rank;
    }
  }
  return out;
}

}  // namespace opalg
