// SPDX-License-Identifier: Apache-2.0
#include "opalg/element.hpp"

#include <stdexcept>

namespace opalg {

Element Element::matrix(ComplexMatrix m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("Element::matrix: square matrix required");
  Element e;
  e.kind_ = Kind::Matrix;
  e.mat_ = std::move(m);
  return e;
}

Element Element::grid_func(Grid g, ComplexVector samples) {
  if (std::size_t(samples.size()) != g.points)
    throw std::invalid_argument("Element::grid_func: sample count mismatch");
  Element e;
  e.kind_ = Kind::GridFunc;
  e.grid_ = g;
  e.samples_ = std::move(samples);
  return e;
}

Element Element::seq_func(Grid g, std::vector<ComplexVector> components) {
  if (components.empty()) throw std::invalid_argument("Element::seq_func: empty sequence");
  for (const auto& c : components)
    if (std::size_t(c.size()) != g.points)
      throw std::invalid_argument("Element::seq_func: sample count mismatch");
  Element e;
  e.kind_ = Kind::SeqFunc;
  e.grid_ = g;
  e.comps_ = std::move(components);
  return e;
}

Element Element::mat_func(Grid g, std::vector<ComplexMatrix> mats) {
  if (mats.size() != g.points)
    throw std::invalid_argument("Element::mat_func: sample count mismatch");
  for (const auto& m : mats)
    if (m.rows() != m.cols() || m.rows() != mats.front().rows())
      throw std::invalid_argument("Element::mat_func: inconsistent block dims");
  Element e;
  e.kind_ = Kind::MatFunc;
  e.grid_ = g;
  e.mats_ = std::move(mats);
  return e;
}

const ComplexMatrix& Element::mat() const {
  if (kind_ != Kind::Matrix) throw std::logic_error("Element: not a matrix");
  return mat_;
}
const ComplexVector& Element::samples() const {
  if (kind_ != Kind::GridFunc) throw std::logic_error("Element: not a grid function");
  return samples_;
}
const std::vector<ComplexVector>& Element::components() const {
  if (kind_ != Kind::SeqFunc) throw std::logic_error("Element: not a sequence");
  return comps_;
}
const std::vector<ComplexMatrix>& Element::matrices() const {
  if (kind_ != Kind::MatFunc) throw std::logic_error("Element: not a matrix function");
  return mats_;
}
const Grid& Element::grid() const {
  if (kind_ == Kind::Matrix) throw std::logic_error("Element: matrices carry no grid");
  return grid_;
}

namespace {
void require_same_shape(const Element& a, const Element& b) {
  if (a.kind() != b.kind()) throw std::invalid_argument("Element: kind mismatch");
  if (a.coord_dim() != b.coord_dim()) throw std::invalid_argument("Element: shape mismatch");
  if (a.kind() != Element::Kind::Matrix && !(a.grid() == b.grid()))
    throw std::invalid_argument("Element: grid mismatch");
}
}  // namespace

Element Element::operator+(const Element& o) const {
  require_same_shape(*this, o);
  Element out = *this;
  switch (kind_) {
    case Kind::Matrix: out.mat_ += o.mat_; break;
    case Kind::GridFunc: out.samples_ += o.samples_; break;
    case Kind::SeqFunc:
      for (std::size_t i = 0; i < comps_.size(); ++i) out.comps_[i] += o.comps_[i];
      break;
    case Kind::MatFunc:
      for (std::size_t i = 0; i < mats_.size(); ++i) out.mats_[i] += o.mats_[i];
      break;
  }
  return out;
}

Element Element::operator-(const Element& o) const { return *this + (Complex(-1.0, 0.0) * o); }

Element operator*(Complex z, const Element& e) {
  Element out = e;
  switch (e.kind_) {
    case Element::Kind::Matrix: out.mat_ *= z; break;
    case Element::Kind::GridFunc: out.samples_ *= z; break;
    case Element::Kind::SeqFunc:
      for (auto& c : out.comps_) c *= z;
      break;
    case Element::Kind::MatFunc:
      for (auto& m : out.mats_) m *= z;
      break;
  }
  return out;
}

Eigen::Index Element::coord_dim() const {
  switch (kind_) {
    case Kind::Matrix: return mat_.size();
    case Kind::GridFunc: return samples_.size();
    case Kind::SeqFunc: return Eigen::Index(comps_.size()) * Eigen::Index(grid_.points);
    case Kind::MatFunc:
      return Eigen::Index(mats_.size()) * mats_.front().size();
  }
  return 0;
}

ComplexVector Element::coordinates() const {
  ComplexVector c(coord_dim());
  switch (kind_) {
    case Kind::Matrix:
      c = Eigen::Map<const ComplexVector>(mat_.data(), mat_.size());
      break;
    case Kind::GridFunc: c = samples_; break;
    case Kind::SeqFunc: {
      Eigen::Index at = 0;
      for (const auto& comp : comps_) {
        c.segment(at, comp.size()) = comp;
        at += comp.size();
      }
      break;
    }
    case Kind::MatFunc: {
      Eigen::Index at = 0;
      for (const auto& m : mats_) {
        c.segment(at, m.size()) = Eigen::Map<const ComplexVector>(m.data(), m.size());
        at += m.size();
      }
      break;
    }
  }
  return c;
}

Element Element::from_coordinates(const ComplexVector& c) const {
  if (c.size() != coord_dim())
    throw std::invalid_argument("Element::from_coordinates: dimension mismatch");
  Element out = *this;
  switch (kind_) {
    case Kind::Matrix:
      out.mat_ = Eigen::Map<const ComplexMatrix>(c.data(), mat_.rows(), mat_.cols());
      break;
    case Kind::GridFunc: out.samples_ = c; break;
    case Kind::SeqFunc: {
      Eigen::Index at = 0;
      for (auto& comp : out.comps_) {
        comp = c.segment(at, comp.size());
        at += comp.size();
      }
      break;
    }
    case Kind::MatFunc: {
      Eigen::Index at = 0;
      for (auto& m : out.mats_) {
        m = Eigen::Map<const ComplexMatrix>(c.data() + at, m.rows(), m.cols());
        at += m.size();
      }
      break;
    }
  }
  return out;
}

bool Element::all_finite() const {
  switch (kind_) {
    case Kind::Matrix: return mat_.allFinite();
    case Kind::GridFunc: return samples_.allFinite();
    case Kind::SeqFunc:
      for (const auto& c : comps_)
        if (!c.allFinite()) return false;
      return true;
    case Kind::MatFunc:
      for (const auto& m : mats_)
        if (!m.allFinite()) return false;
      return true;
  }
  return false;
}

Element star(const Element& a) {
  switch (a.kind()) {
    case Element::Kind::Matrix: return Element::matrix(a.mat().adjoint());
    case Element::Kind::GridFunc: return Element::grid_func(a.grid(), a.samples().conjugate());
    case Element::Kind::SeqFunc: {
      std::vector<ComplexVector> comps;
      comps.reserve(a.components().size());
      for (const auto& c : a.components()) comps.push_back(c.conjugate());
      return Element::seq_func(a.grid(), std::move(comps));
    }
    case Element::Kind::MatFunc: {
      std::vector<ComplexMatrix> mats;
      mats.reserve(a.matrices().size());
      for (const auto& m : a.matrices()) mats.push_back(m.adjoint());
      return Element::mat_func(a.grid(), std::move(mats));
    }
  }
  throw std::logic_error("star: bad kind");
}

Element product(const Element& a, const Element& b) {
  using K = Element::Kind;
  if (a.kind() == K::Matrix && b.kind() == K::Matrix)
    return Element::matrix(a.mat() * b.mat());
  if (a.kind() == K::GridFunc && b.kind() == K::GridFunc) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("product: grid mismatch");
    return Element::grid_func(a.grid(), a.samples().cwiseProduct(b.samples()));
  }
  if (a.kind() == K::SeqFunc && b.kind() == K::SeqFunc) {
    if (!(a.grid() == b.grid()) || a.components().size() != b.components().size())
      throw std::invalid_argument("product: shape mismatch");
    std::vector<ComplexVector> comps;
    comps.reserve(a.components().size());
    for (std::size_t i = 0; i < a.components().size(); ++i)
      comps.push_back(a.components()[i].cwiseProduct(b.components()[i]));
    return Element::seq_func(a.grid(), std::move(comps));
  }
  if (a.kind() == K::MatFunc && b.kind() == K::MatFunc) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("product: grid mismatch");
    std::vector<ComplexMatrix> mats;
    mats.reserve(a.matrices().size());
    for (std::size_t i = 0; i < a.matrices().size(); ++i)
      mats.push_back(a.matrices()[i] * b.matrices()[i]);
    return Element::mat_func(a.grid(), std::move(mats));
  }
  // scalar-function module action on matrix functions
  if (a.kind() == K::GridFunc && b.kind() == K::MatFunc) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("product: grid mismatch");
    std::vector<ComplexMatrix> mats;
    mats.reserve(b.matrices().size());
    for (std::size_t i = 0; i < b.matrices().size(); ++i)
      mats.push_back(a.samples()[Eigen::Index(i)] * b.matrices()[i]);
    return Element::mat_func(a.grid(), std::move(mats));
  }
  if (a.kind() == K::MatFunc && b.kind() == K::GridFunc) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("product: grid mismatch");
    std::vector<ComplexMatrix> mats;
    mats.reserve(a.matrices().size());
    for (std::size_t i = 0; i < a.matrices().size(); ++i)
      mats.push_back(a.matrices()[i] * b.samples()[Eigen::Index(i)]);
    return Element::mat_func(a.grid(), std::move(mats));
  }
  throw std::invalid_argument("product: unsupported kind combination");
}

double max_abs_diff(const Element& a, const Element& b) {
  require_same_shape(a, b);
  return (a.coordinates() - b.coordinates()).cwiseAbs().maxCoeff();
}

}  // namespace opalg
