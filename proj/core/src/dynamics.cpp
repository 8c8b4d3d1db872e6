// SPDX-License-Identifier: Apache-2.0
#include "opalg/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "opalg/errors.hpp"

namespace opalg {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Least-squares slope of y over x (x values distinct).
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  if (m < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) { mx += x[i]; my += y[i]; }
  mx /= double(m);
  my /= double(m);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

}  // namespace

int BlockSpace::step(int j, int direction) const {
  int v = j + direction;
  if (v > half_width) v -= block_count();
  if (v < -half_width) v += block_count();
  return v;
}

BlockOperator::BlockOperator(BlockSpace s)
    : space_(s), target_(std::size_t(s.block_count()), -1),
      block_(std::size_t(s.block_count()),
             ComplexMatrix::Zero(s.block_dim, s.block_dim)) {
  require(s.half_width >= 1 && s.block_dim >= 1, "BlockSpace: J >= 1, d >= 1 required");
}

BlockOperator BlockOperator::zero(BlockSpace s) { return BlockOperator(s); }

BlockOperator BlockOperator::identity(BlockSpace s) {
  BlockOperator a(s);
  for (int slot = 0; slot < s.block_count(); ++slot)
    a.set_block(slot, slot, ComplexMatrix::Identity(s.block_dim, s.block_dim));
  return a;
}

BlockOperator BlockOperator::projector(BlockSpace s, int j) {
  require(std::abs(j) <= s.half_width, "projector: block index out of range");
  BlockOperator a(s);
  a.set_block(s.slot(j), s.slot(j), ComplexMatrix::Identity(s.block_dim, s.block_dim));
  return a;
}

BlockOperator BlockOperator::band_projector(BlockSpace s, int k) {
  require(k >= 0 && k <= s.half_width, "band_projector: radius out of range");
  BlockOperator a(s);
  for (int j = -k; j <= k; ++j)
    a.set_block(s.slot(j), s.slot(j), ComplexMatrix::Identity(s.block_dim, s.block_dim));
  return a;
}

void BlockOperator::set_block(int source_slot, int target_slot, ComplexMatrix b) {
  require(source_slot >= 0 && source_slot < space_.block_count() &&
              target_slot >= 0 && target_slot < space_.block_count(),
          "set_block: slot out of range");
  require(b.rows() == space_.block_dim && b.cols() == space_.block_dim,
          "set_block: block has wrong shape");
  target_[std::size_t(source_slot)] = target_slot;
  block_[std::size_t(source_slot)] = std::move(b);
}

ComplexMatrix BlockOperator::dense() const {
  const Eigen::Index d = space_.block_dim;
  ComplexMatrix m = ComplexMatrix::Zero(space_.total_dim(), space_.total_dim());
  for (int s = 0; s < space_.block_count(); ++s) {
    const int t = target_[std::size_t(s)];
    if (t < 0) continue;
    m.block(Eigen::Index(t) * d, Eigen::Index(s) * d, d, d) = block_[std::size_t(s)];
  }
  return m;
}

BlockOperator BlockOperator::adjoint() const {
  BlockOperator a(space_);
  for (int s = 0; s < space_.block_count(); ++s) {
    const int t = target_[std::size_t(s)];
    if (t < 0) continue;
    if (a.target_[std::size_t(t)] != -1)
      throw std::logic_error("BlockOperator::adjoint: targets not injective");
    a.target_[std::size_t(t)] = s;
    a.block_[std::size_t(t)] = block_[std::size_t(s)].adjoint();
  }
  return a;
}

double BlockOperator::op_norm() const {
  std::vector<bool> seen(std::size_t(space_.block_count()), false);
  double best = 0.0;
  for (int s = 0; s < space_.block_count(); ++s) {
    const int t = target_[std::size_t(s)];
    if (t < 0) continue;
    if (seen[std::size_t(t)])
      throw std::logic_error("BlockOperator::op_norm: targets not injective");
    seen[std::size_t(t)] = true;
    best = std::max(best, operator_norm(block_[std::size_t(s)]));
  }
  return best;
}

BlockOperator compose(const BlockOperator& a, const BlockOperator& b) {
  require(a.space() == b.space(), "compose: spaces differ");
  BlockOperator out(a.space());
  for (int s = 0; s < a.space().block_count(); ++s) {
    const int tb = b.target(s);
    if (tb < 0) continue;
    const int ta = a.target(tb);
    if (ta < 0) continue;
    out.set_block(s, ta, ComplexMatrix(a.block(tb) * b.block(s)));
  }
  return out;
}

BlockOperator pow_shift(const BlockOperator& v, int n) {
  require(n >= 0, "pow_shift: nonnegative power required");
  BlockOperator out = BlockOperator::identity(v.space());
  for (int i = 0; i < n; ++i) out = compose(v, out);
  return out;
}

ShiftPair build_shift(BlockSpace s, double up_weight, double down_weight) {
  require(up_weight > 0.0 && down_weight > 0.0, "build_shift: weights must be positive");
  const Eigen::Index d = s.block_dim;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ShiftPair pair{BlockOperator(s), BlockOperator(s), up_weight, down_weight, 0.0};
  for (int j = -s.half_width; j <= s.half_width; ++j) {
    const int t = s.step(j, +1);
    const double w = (j == s.half_width) ? 1.0 : (j >= 0 ? up_weight : down_weight);
    pair.v.set_block(s.slot(j), s.slot(t), ComplexMatrix(w * id));
    pair.v_inv.set_block(s.slot(t), s.slot(j), ComplexMatrix((1.0 / w) * id));
  }
  const ComplexMatrix defect =
      compose(pair.v, pair.v_inv).dense() -
      ComplexMatrix::Identity(s.total_dim(), s.total_dim());
  pair.inverse_defect = defect.cwiseAbs().maxCoeff();
  return pair;
}

std::vector<double> lambda_schedule(const BlockSpace& s, const std::string& name) {
  std::vector<double> lam(std::size_t(s.block_count()), 0.0);
  for (int j = -s.half_width; j <= s.half_width; ++j) {
    double v = 0.0;
    if (name == "harmonic") v = 1.0 / (1.0 + std::abs(j));
    else if (name == "geometric4") v = std::exp2(-2.0 * std::abs(j));
    else if (name == "ones") v = 1.0;
    else throw std::invalid_argument("lambda_schedule: unknown schedule '" + name + "'");
    lam[std::size_t(s.slot(j))] = v;
  }
  return lam;
}

BuiltW build_W(const BlockSpace& s, const std::vector<double>& lambda,
               const std::vector<ComplexMatrix>& w_blocks) {
  require(lambda.size() == std::size_t(s.block_count()), "build_W: lambda size mismatch");
  require(w_blocks.size() == std::size_t(s.block_count()), "build_W: block count mismatch");
  for (double l : lambda)
    if (l < 0.0) throw std::invalid_argument("build_W: negative lambda");

  BuiltW out{BlockOperator(s), {}, true};
  std::vector<double> block_norms(lambda.size(), 0.0);
  double max_block = 0.0;
  for (int slot = 0; slot < s.block_count(); ++slot) {
    const HermitianMatrix h(w_blocks[std::size_t(slot)]);
    if (!is_psd(h)) throw std::domain_error("build_W: W_j must be PSD");
    block_norms[std::size_t(slot)] = operator_norm(h.matrix());
    max_block = std::max(max_block, block_norms[std::size_t(slot)]);
    out.w.set_block(slot, slot,
                    ComplexMatrix(lambda[std::size_t(slot)] * h.matrix()));
  }
  for (int n = 0; n < s.half_width; ++n) {
    TailBoundRow row;
    row.n = n;
    double sup_lambda = 0.0;
    for (int j = -s.half_width; j <= s.half_width; ++j) {
      if (std::abs(j) <= n) continue;
      const std::size_t slot = std::size_t(s.slot(j));
      row.tail_norm = std::max(row.tail_norm, lambda[slot] * block_norms[slot]);
      sup_lambda = std::max(sup_lambda, lambda[slot]);
    }
    row.bound = sup_lambda * max_block;
    out.pass = out.pass && row.tail_norm <= row.bound + 1e-12;
    out.tail.push_back(row);
  }
  return out;
}

DecayTable power_decay(const ShiftPair& shift, int k, int n_min, int n_max) {
  const BlockSpace& s = shift.v.space();
  require(k >= 0 && n_min >= 0 && n_min <= n_max, "power_decay: bad range");
  if (n_max + k > s.half_width)
    throw WindowTooSmallError("power_decay: n + k exceeds the half-width J");
  const BlockOperator band = BlockOperator::band_projector(s, k);
  const bool default_pair = shift.up_weight == 0.5 && shift.down_weight == 2.0;

  DecayTable table;
  table.within_bound = true;
  BlockOperator fwd = BlockOperator::identity(s);
  BlockOperator bwd = fwd;
  std::vector<double> ns, lf, lb;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) {
      fwd = compose(shift.v, fwd);
      bwd = compose(shift.v_inv, bwd);
    }
    if (n < n_min) continue;
    DecayRow row;
    row.n = n;
    row.forward_norm = compose(fwd, band).op_norm();
    row.backward_norm = compose(bwd, band).op_norm();
    if (default_pair) {
      row.bound = (k >= 1) ? 2.0 * k * std::exp2(2.0 * k - n) : std::exp2(double(-n));
    } else {
      // triangle bound from the blockwise weight products
      double acc = (k + 1) * std::pow(shift.up_weight, n);
      for (int m = 1; m <= k; ++m)
        acc += std::pow(shift.down_weight, std::min(n, m)) *
               std::pow(shift.up_weight, std::max(0, n - m));
      row.bound = acc;
    }
    table.within_bound = table.within_bound &&
                         row.forward_norm <= row.bound + 1e-12 &&
                         row.backward_norm <= row.bound + 1e-12;
    if (row.forward_norm > 0.0 && row.backward_norm > 0.0) {
      ns.push_back(double(n));
      lf.push_back(std::log2(row.forward_norm));
      lb.push_back(std::log2(row.backward_norm));
    }
    table.rows.push_back(row);
  }
  table.fitted_slope_forward = fit_slope(ns, lf);
  table.fitted_slope_backward = fit_slope(ns, lb);
  return table;
}

double seminorm_W(const BlockOperator& w, const ComplexMatrix& x) {
  const BlockSpace& s = w.space();
  const Eigen::Index d = s.block_dim;
  require(x.cols() == s.total_dim(), "seminorm_W: column count mismatch");
  Complex acc{0.0, 0.0};
  for (int slot = 0; slot < s.block_count(); ++slot) {
    const int t = w.target(slot);
    if (t < 0) continue;
    require(t == slot, "seminorm_W: W must be block diagonal");
    const auto cols = x.middleCols(Eigen::Index(slot) * d, d);
    acc += (cols * w.block(slot) * cols.adjoint()).trace();
  }
  if (acc.real() < -1e-10)
    throw NumericalError("seminorm_W: negative square " + std::to_string(acc.real()));
  return std::sqrt(std::max(0.0, acc.real()));
}

double seminorm_W(const BlockOperator& w, const BlockOperator& x) {
  return seminorm_W(w, x.dense());
}

ComplexMatrix right_multiply(const ShiftPair& shift, int n, const ComplexMatrix& x) {
  const BlockSpace& s = shift.v.space();
  const Eigen::Index d = s.block_dim;
  require(x.cols() == s.total_dim(), "right_multiply: column count mismatch");
  const BlockOperator a =
      n >= 0 ? pow_shift(shift.v, n) : pow_shift(shift.v_inv, -n);
  ComplexMatrix y = ComplexMatrix::Zero(x.rows(), x.cols());
  for (int slot = 0; slot < s.block_count(); ++slot) {
    const int t = a.target(slot);
    if (t < 0) continue;
    y.middleCols(Eigen::Index(t) * d, d) +=
        x.middleCols(Eigen::Index(slot) * d, d) * a.block(slot).adjoint();
  }
  const double lhs = y.norm();
  const double rhs = x.norm() * a.op_norm();
  if (lhs > rhs + 1e-9 * std::max(1.0, rhs))
    throw NumericalError("right_multiply: Hilbert-Schmidt bound violated");
  return y;
}

namespace {

// Shared search: defect evaluators indexed by n, re-evaluation at N done by
// the callers.
struct SearchResult {
  int n = -1;
  std::vector<double> d1, d2;
};

template <typename F1, typename F2>
SearchResult search_window(int window, double delta, F1&& defect1, F2&& defect2) {
  SearchResult r;
  for (int n = 0; n <= window; ++n) {
    const double a = defect1(n);
    const double b = defect2(n);
    r.d1.push_back(a);
    r.d2.push_back(b);
    if (r.n < 0 && a < delta && b < delta) r.n = n;
  }
  return r;
}

double operator_decay_slope(const ShiftPair& shift, int k, int window) {
  const BlockSpace& s = shift.v.space();
  std::vector<double> ns, ys;
  BlockOperator fwd = BlockOperator::identity(s);
  BlockOperator bwd = fwd;
  const BlockOperator band = BlockOperator::band_projector(s, k);
  for (int n = 0; n <= window; ++n) {
    if (n > 0) {
      fwd = compose(shift.v, fwd);
      bwd = compose(shift.v_inv, bwd);
    }
    if (n < k) continue;
    const double v =
        std::max(compose(fwd, band).op_norm(), compose(bwd, band).op_norm());
    if (v <= 0.0) continue;
    ns.push_back(double(n));
    ys.push_back(std::log2(v));
  }
  return fit_slope(ns, ys);
}

// Right-projects F onto the band and reports what was removed.
double project_right(const ComplexMatrix& band, ComplexMatrix& f) {
  const ComplexMatrix projected = f * band;
  const double defect = (f - projected).norm();
  f = projected;
  return defect;
}

}  // namespace

TransitivityReport transitivity_witness(const BuiltW& w, const ShiftPair& shift,
                                        ComplexMatrix f1, ComplexMatrix f2,
                                        int k, double delta) {
  const BlockSpace& s = shift.v.space();
  require(k >= 0 && k <= s.half_width, "transitivity_witness: bad support radius");
  require(f1.cols() == s.total_dim() && f2.cols() == s.total_dim(),
          "transitivity_witness: operand shape mismatch");
  require(delta > 0.0, "transitivity_witness: delta must be positive");

  TransitivityReport rep;
  rep.delta = delta;
  rep.window = s.half_width - k;
  const ComplexMatrix band = BlockOperator::band_projector(s, k).dense();
  rep.projection_defect = std::max(project_right(band, f1), project_right(band, f2));

  const double wnorm_sqrt = std::sqrt(w.w.op_norm());
  auto check_seminorm_bound = [&](double value, const ComplexMatrix& x, int n) {
    const double hs = x.norm() *
                      (n >= 0 ? pow_shift(shift.v, n) : pow_shift(shift.v_inv, -n)).op_norm();
    const double cap = hs * wnorm_sqrt;
    if (value > cap + 1e-9 * std::max(1.0, cap))
      throw NumericalError("witness: seminorm bound violated");
  };
  const SearchResult found = search_window(
      rep.window, delta,
      [&](int n) {
        const double v = seminorm_W(w.w, right_multiply(shift, -n, f2));
        check_seminorm_bound(v, f2, -n);
        return v;
      },
      [&](int n) {
        const double v = seminorm_W(w.w, right_multiply(shift, n, f1));
        check_seminorm_bound(v, f1, n);
        return v;
      });
  rep.first_defect_trace = found.d1;
  rep.second_defect_trace = found.d2;
  if (found.n < 0)
    throw WindowTooSmallError(
        "transitivity_witness: no admissible N with N + k <= J; increase J");
  rep.witness_index = found.n;

  const ComplexMatrix xn = f1 + right_multiply(shift, -found.n, f2);
  rep.defect_first = seminorm_W(w.w, ComplexMatrix(xn - f1));
  rep.defect_second =
      seminorm_W(w.w, ComplexMatrix(right_multiply(shift, found.n, xn) - f2));
  rep.fitted_slope = operator_decay_slope(shift, k, rep.window);
  rep.pass = rep.defect_first < delta && rep.defect_second < delta;
  return rep;
}

TransitivityReport cosine_witness(const BuiltW& w, const ShiftPair& shift,
                                  ComplexMatrix f1, ComplexMatrix f2,
                                  int k, double delta) {
  const BlockSpace& s = shift.v.space();
  require(k >= 0 && k <= s.half_width, "cosine_witness: bad support radius");
  require(f1.cols() == s.total_dim() && f2.cols() == s.total_dim(),
          "cosine_witness: operand shape mismatch");
  require(delta > 0.0, "cosine_witness: delta must be positive");

  TransitivityReport rep;
  rep.delta = delta;
  rep.window = (s.half_width - k) / 2;  // C^(n)(X_n) reaches R^{+-2n}
  const ComplexMatrix band = BlockOperator::band_projector(s, k).dense();
  rep.projection_defect = std::max(project_right(band, f1), project_right(band, f2));

  auto make_xn = [&](int n) {
    return ComplexMatrix(f1 + right_multiply(shift, n, f2) +
                         right_multiply(shift, -n, f2));
  };
  auto cosine_apply = [&](int n, const ComplexMatrix& x) {
    return ComplexMatrix(0.5 * (right_multiply(shift, n, x) +
                                right_multiply(shift, -n, x)));
  };
  const SearchResult found = search_window(
      rep.window, delta,
      [&](int n) { return seminorm_W(w.w, ComplexMatrix(make_xn(n) - f1)); },
      [&](int n) {
        return seminorm_W(w.w, ComplexMatrix(cosine_apply(n, make_xn(n)) - f2));
      });
  rep.first_defect_trace = found.d1;
  rep.second_defect_trace = found.d2;
  if (found.n < 0)
    throw WindowTooSmallError(
        "cosine_witness: no admissible N with 2N + k <= J; increase J");
  rep.witness_index = found.n;

  const int n = found.n;
  const ComplexMatrix xn = make_xn(n);
  rep.defect_first = seminorm_W(w.w, ComplexMatrix(xn - f1));
  const ComplexMatrix cxn = cosine_apply(n, xn);
  rep.defect_second = seminorm_W(w.w, ComplexMatrix(cxn - f2));
  const ComplexMatrix expansion =
      0.5 * (right_multiply(shift, n, f1) + right_multiply(shift, -n, f1) +
             right_multiply(shift, 2 * n, f2) + right_multiply(shift, -2 * n, f2));
  rep.expansion_defect = (ComplexMatrix(cxn - f2) - expansion).cwiseAbs().maxCoeff();
  rep.fitted_slope = operator_decay_slope(shift, k, s.half_width - k);
  rep.pass = rep.defect_first < delta && rep.defect_second < delta;
  return rep;
}

}  // namespace opalg
