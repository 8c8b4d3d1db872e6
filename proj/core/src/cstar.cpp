// SPDX-License-Identifier: Apache-2.0
#include "opalg/cstar.hpp"

#include <stdexcept>

namespace opalg {

std::string CodomainDesc::name() const {
  switch (kind) {
    case Kind::Scalar: return "C";
    case Kind::Func: return "C([" + std::to_string(grid.start) + "," + std::to_string(grid.end) + "])";
    case Kind::Mat: return "M_" + std::to_string(dim);
    case Kind::MatFunc: return "C_b(R, M_" + std::to_string(dim) + ")";
  }
  return "?";
}

CStarValue CStarValue::scalar(Complex v) {
  CStarValue out;
  out.kind_ = Kind::Scalar;
  out.scalar_ = v;
  return out;
}

CStarValue CStarValue::func(Grid g, ComplexVector samples) {
  if (std::size_t(samples.size()) != g.points)
    throw std::invalid_argument("CStarValue::func: sample count mismatch");
  CStarValue out;
  out.kind_ = Kind::Func;
  out.grid_ = g;
  out.samples_ = std::move(samples);
  return out;
}

CStarValue CStarValue::mat(ComplexMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("CStarValue::mat: square required");
  CStarValue out;
  out.kind_ = Kind::Mat;
  out.mat_ = std::move(m);
  return out;
}

CStarValue CStarValue::mat_func(Grid g, std::vector<ComplexMatrix> mats) {
  if (mats.size() != g.points)
    throw std::invalid_argument("CStarValue::mat_func: sample count mismatch");
  for (const auto& m : mats)
    if (m.rows() != m.cols() || m.rows() != mats.front().rows())
      throw std::invalid_argument("CStarValue::mat_func: inconsistent block dims");
  CStarValue out;
  out.kind_ = Kind::MatFunc;
  out.grid_ = g;
  out.mats_ = std::move(mats);
  return out;
}

CStarValue CStarValue::zero_like(const CodomainDesc& c) {
  switch (c.kind) {
    case Kind::Scalar: return scalar({0.0, 0.0});
    case Kind::Func: return func(c.grid, ComplexVector::Zero(Eigen::Index(c.grid.points)));
    case Kind::Mat: return mat(ComplexMatrix::Zero(c.dim, c.dim));
    case Kind::MatFunc:
      return mat_func(c.grid, std::vector<ComplexMatrix>(
                                  c.grid.points, ComplexMatrix::Zero(c.dim, c.dim)));
  }
  throw std::logic_error("zero_like: bad kind");
}

Complex CStarValue::scalar_value() const {
  if (kind_ != Kind::Scalar) throw std::logic_error("CStarValue: not a scalar");
  return scalar_;
}
const ComplexVector& CStarValue::samples() const {
  if (kind_ != Kind::Func) throw std::logic_error("CStarValue: not a function");
  return samples_;
}
const ComplexMatrix& CStarValue::matrix() const {
  if (kind_ != Kind::Mat) throw std::logic_error("CStarValue: not a matrix");
  return mat_;
}
const std::vector<ComplexMatrix>& CStarValue::matrices() const {
  if (kind_ != Kind::MatFunc) throw std::logic_error("CStarValue: not a matrix function");
  return mats_;
}
const Grid& CStarValue::grid() const {
  if (kind_ != Kind::Func && kind_ != Kind::MatFunc)
    throw std::logic_error("CStarValue: no grid");
  return grid_;
}

CStarValue CStarValue::adjoint() const {
  CStarValue out = *this;
  switch (kind_) {
    case Kind::Scalar: out.scalar_ = std::conj(scalar_); break;
    case Kind::Func: out.samples_ = samples_.conjugate(); break;
    case Kind::Mat: out.mat_ = mat_.adjoint(); break;
    case Kind::MatFunc:
      for (auto& m : out.mats_) m = m.adjoint().eval();
      break;
  }
  return out;
}

namespace {
void require_same_shape(const CStarValue& a, const CStarValue& b) {
  if (a.kind() != b.kind()) throw std::invalid_argument("CStarValue: kind mismatch");
  switch (a.kind()) {
    case CStarValue::Kind::Func:
    case CStarValue::Kind::MatFunc:
      if (!(a.grid() == b.grid())) throw std::invalid_argument("CStarValue: grid mismatch");
      break;
    case CStarValue::Kind::Mat:
      if (a.matrix().rows() != b.matrix().rows())
        throw std::invalid_argument("CStarValue: dim mismatch");
      break;
    default: break;
  }
}
}  // namespace

CStarValue CStarValue::operator+(const CStarValue& o) const {
  require_same_shape(*this, o);
  CStarValue out = *this;
  switch (kind_) {
    case Kind::Scalar: out.scalar_ += o.scalar_; break;
    case Kind::Func: out.samples_ += o.samples_; break;
    case Kind::Mat: out.mat_ += o.mat_; break;
    case Kind::MatFunc:
      for (std::size_t i = 0; i < mats_.size(); ++i) out.mats_[i] += o.mats_[i];
      break;
  }
  return out;
}

CStarValue CStarValue::operator-(const CStarValue& o) const {
  return *this + (Complex(-1.0, 0.0) * o);
}

CStarValue CStarValue::operator*(const CStarValue& o) const {
  require_same_shape(*this, o);
  CStarValue out = *this;
  switch (kind_) {
    case Kind::Scalar: out.scalar_ *= o.scalar_; break;
    case Kind::Func: out.samples_ = samples_.cwiseProduct(o.samples_); break;
    case Kind::Mat: out.mat_ = mat_ * o.mat_; break;
    case Kind::MatFunc:
      for (std::size_t i = 0; i < mats_.size(); ++i) out.mats_[i] = mats_[i] * o.mats_[i];
      break;
  }
  return out;
}

CStarValue operator*(Complex z, const CStarValue& v) {
  CStarValue out = v;
  switch (v.kind_) {
    case CStarValue::Kind::Scalar: out.scalar_ *= z; break;
    case CStarValue::Kind::Func: out.samples_ *= z; break;
    case CStarValue::Kind::Mat: out.mat_ *= z; break;
    case CStarValue::Kind::MatFunc:
      for (auto& m : out.mats_) m *= z;
      break;
  }
  return out;
}

bool CStarValue::is_positive(double tol) const {
  switch (kind_) {
    case Kind::Scalar:
      return scalar_.real() >= -tol && std::abs(scalar_.imag()) <= tol;
    case Kind::Func:
      for (Eigen::Index i = 0; i < samples_.size(); ++i)
        if (samples_[i].real() < -tol || std::abs(samples_[i].imag()) > tol) return false;
      return true;
    case Kind::Mat: {
      if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
          0.5 * (mat_ + mat_.adjoint().eval()), Eigen::EigenvaluesOnly);
      return es.eigenvalues().minCoeff() >= -tol;
    }
    case Kind::MatFunc:
      for (const auto& m : mats_) {
        if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint().eval()),
                                                        Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tol) return false;
      }
      return true;
  }
  return false;
}

Complex CStarValue::scalarize() const {
  switch (kind_) {
    case Kind::Scalar: return scalar_;
    case Kind::Func: return samples_.sum();
    case Kind::Mat: return mat_.trace();
    case Kind::MatFunc: {
      Complex acc{0.0, 0.0};
      for (const auto& m : mats_) acc += m.trace();
      return acc;
    }
  }
  return {0.0, 0.0};
}

double cnorm(const CStarValue& v) {
  switch (v.kind()) {
    case CStarValue::Kind::Scalar: return std::abs(v.scalar_value());
    case CStarValue::Kind::Func: return v.samples().size() ? v.samples().cwiseAbs().maxCoeff() : 0.0;
    case CStarValue::Kind::Mat: return operator_norm(v.matrix());
    case CStarValue::Kind::MatFunc: {
      double best = 0.0;
      for (const auto& m : v.matrices()) best = std::max(best, operator_norm(m));
      return best;
    }
  }
  return 0.0;
}

}  // namespace opalg
