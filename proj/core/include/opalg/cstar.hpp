// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "opalg/grid.hpp"
#include "opalg/linalg.hpp"

namespace opalg {

// Description of the codomain C*-algebra a form or map takes values in.
struct CodomainDesc {
  enum class Kind { Scalar, Func, Mat, MatFunc };
  Kind kind = Kind::Scalar;
  Grid grid{};      // Func / MatFunc
  int dim = 1;      // Mat / MatFunc block dimension
  std::string name() const;
  bool commutative() const { return kind == Kind::Scalar || kind == Kind::Func || dim == 1; }
};

// Value in one of the concrete C*-algebras used by the catalog:
//   Scalar   complex number
//   Func     continuous function sampled on a grid (sup norm)
//   Mat      complex d x d matrix (operator norm)
//   MatFunc  matrix-valued function sampled on a grid (sup of pointwise
//            operator norms); realizes C_b(R, M_d) at truncation
class CStarValue {
 public:
  using Kind = CodomainDesc::Kind;

  static CStarValue scalar(Complex v);
  static CStarValue func(Grid g, ComplexVector samples);
  static CStarValue mat(ComplexMatrix m);
  static CStarValue mat_func(Grid g, std::vector<ComplexMatrix> mats);
  static CStarValue zero_like(const CodomainDesc& c);

  Kind kind() const { return kind_; }
  Complex scalar_value() const;
  const ComplexVector& samples() const;
  const ComplexMatrix& matrix() const;
  const std::vector<ComplexMatrix>& matrices() const;
  const Grid& grid() const;

  CStarValue adjoint() const;
  CStarValue operator+(const CStarValue& o) const;
  CStarValue operator-(const CStarValue& o) const;
  CStarValue operator*(const CStarValue& o) const;  // algebra product
  friend CStarValue operator*(Complex z, const CStarValue& v);

  // Positivity as a self-adjoint element of the codomain: Hermitian within
  // tol and spectrum >= -tol (per sample / per block).
  bool is_positive(double tol = 1e-10) const;

  // Faithful positive linear scalarization used to turn C*-valued Gram data
  // into ordinary linear algebra: identity / sample sum / trace / trace sum.
  Complex scalarize() const;

 private:
  Kind kind_ = Kind::Scalar;
  Complex scalar_{0.0, 0.0};
  Grid grid_{};
  ComplexVector samples_;
  ComplexMatrix mat_;
  std::vector<ComplexMatrix> mats_;
};

// C*-norm of the value (modulus / sup / operator norm / sup of operator norms).
double cnorm(const CStarValue& v);

}  // namespace opalg
