// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "opalg/linalg.hpp"
#include "opalg/rng.hpp"

namespace opalg {

// Cyclically truncated block space: blocks j = -J..J of dimension d with
// index arithmetic modulo L = 2J+1. The cyclic wrap is what keeps the
// weighted shift exactly invertible at finite truncation; decay statements
// are only asserted inside the window where supports never cross the wrap.
struct BlockSpace {
  int half_width = 1;  // J
  int block_dim = 1;   // d

  int block_count() const { return 2 * half_width + 1; }
  Eigen::Index total_dim() const {
    return Eigen::Index(block_count()) * block_dim;
  }
  // Storage slot of block index j in [-J, J].
  int slot(int j) const { return j + half_width; }
  // Cyclic successor / predecessor in block-index space.
  int step(int j, int direction) const;

  bool operator==(const BlockSpace& o) const {
    return half_width == o.half_width && block_dim == o.block_dim;
  }
};

// Operator with at most one target block per source block (shift-structured):
// block-column j carries the d x d coefficient into block-row target[j].
// Covers the block projections, the weighted shifts and their powers and
// adjoints, and the block-diagonal W.
class BlockOperator {
 public:
  explicit BlockOperator(BlockSpace s);

  static BlockOperator zero(BlockSpace s);
  static BlockOperator identity(BlockSpace s);
  static BlockOperator projector(BlockSpace s, int j);        // P_j
  static BlockOperator band_projector(BlockSpace s, int k);   // sum_{|j|<=k} P_j

  const BlockSpace& space() const { return space_; }
  // Target slot for a source slot, -1 when the block column is zero.
  int target(int source_slot) const { return target_[std::size_t(source_slot)]; }
  const ComplexMatrix& block(int source_slot) const {
    return block_[std::size_t(source_slot)];
  }
  void set_block(int source_slot, int target_slot, ComplexMatrix b);

  ComplexMatrix dense() const;
  BlockOperator adjoint() const;  // requires injective targets
  // Operator norm: max block norm (exact for injective targets).
  double op_norm() const;

 private:
  BlockSpace space_;
  std::vector<int> target_;
  std::vector<ComplexMatrix> block_;
};

// Operator product a * b (apply b first). Shift-structured in, shift-
// structured out.
BlockOperator compose(const BlockOperator& a, const BlockOperator& b);
BlockOperator pow_shift(const BlockOperator& v, int n);  // n >= 0

// Weighted cyclic shift V (block j -> j+1 with weight up_weight for j >= 0,
// down_weight for j <= -1, and weight 1 on the single wrap edge J -> -J)
// together with its exact inverse. The default weights are the pair the
// closed-form decay bounds are derived for.
struct ShiftPair {
  BlockOperator v;
  BlockOperator v_inv;
  double up_weight = 0.5;
  double down_weight = 2.0;
  double inverse_defect = 0.0;  // max entry of |V V_inv - I|
};
ShiftPair build_shift(BlockSpace s, double up_weight = 0.5, double down_weight = 2.0);

// Named weight schedules for W: "harmonic" 1/(1+|j|), "geometric4" 4^{-|j|},
// "ones". Values indexed by storage slot.
std::vector<double> lambda_schedule(const BlockSpace& s, const std::string& name);

struct TailBoundRow {
  int n = 0;
  double tail_norm = 0.0;  // ||W (I - sum_{|j|<=n} P_j)||
  double bound = 0.0;      // sup_{|j|>n} lambda_j * max_j ||W_j||
};
struct BuiltW {
  BlockOperator w;
  std::vector<TailBoundRow> tail;  // n = 0..J-1
  bool pass = false;
};
// W = sum_j lambda_j P_j W_j P_j (block diagonal). lambda must be
// nonnegative (std::invalid_argument) and each W_j PSD (std::domain_error);
// both indexed by storage slot.
BuiltW build_W(const BlockSpace& s, const std::vector<double>& lambda,
               const std::vector<ComplexMatrix>& w_blocks);

struct DecayRow {
  int n = 0;
  double forward_norm = 0.0;   // ||V^n Pi_k||
  double backward_norm = 0.0;  // ||V^{-n} Pi_k||
  double bound = 0.0;
};
struct DecayTable {
  std::vector<DecayRow> rows;
  double fitted_slope_forward = 0.0;   // least-squares slope of log2(norm) vs n
  double fitted_slope_backward = 0.0;
  bool within_bound = false;
};
// Measured shift-power decay on the band |j| <= k over n = n_min..n_max.
// The validity window requires n_max + k <= J (WindowTooSmallError). For the
// default weight pair the bound column is 2k 2^{2k-n} (k >= 1) resp. 2^{-n}
// (k = 0); other pairs get the blockwise triangle bound.
DecayTable power_decay(const ShiftPair& shift, int k, int n_min, int n_max);

// sqrt(trace(X W X*)) for block-diagonal PSD W. Throws NumericalError when
// the computed square falls below -1e-10.
double seminorm_W(const BlockOperator& w, const ComplexMatrix& x);
double seminorm_W(const BlockOperator& w, const BlockOperator& x);

// X (V^n)* by block application (n < 0 uses the exact inverse). Checks the
// Hilbert-Schmidt bound ||X (V^n)*||_2 <= ||X||_2 ||V^n|| on every call.
ComplexMatrix right_multiply(const ShiftPair& shift, int n, const ComplexMatrix& x);

struct TransitivityReport {
  int witness_index = -1;  // smallest admissible N, -1 while searching
  int window = 0;          // largest n searched
  double delta = 0.0;
  // Defect traces over n = 0..window. For the plain witness these equal
  // ||R^{-n}(F2)||_W and ||R^n(F1)||_W.
  std::vector<double> first_defect_trace;   // ||X_n - F1||_W
  std::vector<double> second_defect_trace;  // ||second witness defect||_W
  double defect_first = kInfinity;          // re-evaluated from scratch at N
  double defect_second = kInfinity;
  double projection_defect = 0.0;  // largest ||F_i - F_i Pi_k||_2 removed
  // Least-squares slope of log2 ||V^{+-n} Pi_k|| over n = k..window; the
  // seminorm traces above may drift with the lambda schedule, the operator
  // norms may not.
  double fitted_slope = 0.0;
  double expansion_defect = 0.0;  // cosine expansion identity residual at N
  bool pass = false;
};

// Smallest N with ||X_N - F1||_W < delta and ||R^N(X_N) - F2||_W < delta
// where X_n = F1 + R^{-n}(F2) and R(X) = X V*. Inputs are right-projected
// onto the band |j| <= k (defect reported). Throws WindowTooSmallError when
// no N exists with N + k <= J.
TransitivityReport transitivity_witness(const BuiltW& w, const ShiftPair& shift,
                                        ComplexMatrix f1, ComplexMatrix f2,
                                        int k, double delta);

// Cosine variant: X_n = F1 + R^n(F2) + R^{-n}(F2) and C^n = (R^n + R^{-n})/2;
// the window must fit 2N + k <= J. Also verifies the expansion identity
// C^N(X_N) - F2 = (R^N F1 + R^{-N} F1 + R^{2N} F2 + R^{-2N} F2)/2.
TransitivityReport cosine_witness(const BuiltW& w, const ShiftPair& shift,
                                  ComplexMatrix f1, ComplexMatrix f2,
                                  int k, double delta);

}  // namespace opalg
