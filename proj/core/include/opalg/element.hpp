// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "opalg/grid.hpp"
#include "opalg/linalg.hpp"

namespace opalg {

// Element of one of the concrete (quasi) *-algebras the models build:
//   Matrix    d x d complex matrix
//   GridFunc  scalar function sampled on a grid
//   SeqFunc   finite sequence of scalar grid functions (truncated l2(C(Omega)))
//   MatFunc   matrix-valued grid function
// Products are structural: matrix product, pointwise product, component-wise
// product, pointwise matrix product, and scalar-function * matrix-function
// module actions.
class Element {
 public:
  enum class Kind { Matrix, GridFunc, SeqFunc, MatFunc };

  static Element matrix(ComplexMatrix m);
  static Element grid_func(Grid g, ComplexVector samples);
  static Element seq_func(Grid g, std::vector<ComplexVector> components);
  static Element mat_func(Grid g, std::vector<ComplexMatrix> mats);

  Kind kind() const { return kind_; }
  const ComplexMatrix& mat() const;
  const ComplexVector& samples() const;
  const std::vector<ComplexVector>& components() const;
  const std::vector<ComplexMatrix>& matrices() const;
  const Grid& grid() const;

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  friend Element operator*(Complex z, const Element& e);

  // Total number of complex coordinates (dimension of the finite model).
  Eigen::Index coord_dim() const;
  ComplexVector coordinates() const;
  // Rebuild an element with this element's shape from flat coordinates.
  Element from_coordinates(const ComplexVector& c) const;

  bool all_finite() const;

 private:
  Kind kind_ = Kind::Matrix;
  Grid grid_{};
  ComplexMatrix mat_;
  ComplexVector samples_;
  std::vector<ComplexVector> comps_;
  std::vector<ComplexMatrix> mats_;
};

// Involution: adjoint / conjugate / component conjugate / pointwise adjoint.
Element star(const Element& a);

// Structural product. Mixed kinds are supported for the scalar-function
// module action on matrix functions (GridFunc * MatFunc and MatFunc * GridFunc).
Element product(const Element& a, const Element& b);

// max |coordinate| of the difference; shape mismatch throws.
double max_abs_diff(const Element& a, const Element& b);

}  // namespace opalg
