// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>

#include "opalg/catalog.hpp"
#include "opalg/dynamics.hpp"
#include "opalg/gns.hpp"
#include "opalg/linalg.hpp"
#include "opalg/rng.hpp"

using namespace opalg;

namespace {

ComplexMatrix ginibre(Rng& rng, Eigen::Index n) {
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rng.cnormal();
  return m;
}

void bm_schatten_norm(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  Rng rng(1);
  const ComplexMatrix m = ginibre(rng, n);
  const double p = 3.0;
  for (auto _ : state) benchmark::DoNotOptimize(schatten_norm(m, p));
}

void bm_kernel_form_eval(benchmark::State& state) {
  const std::size_t points = std::size_t(state.range(0));
  const Grid gx = Grid::uniform(-1.0, 1.0, 41);
  const Grid gt = Grid::uniform(-1.0, 1.0, points);
  KernelSpec spec = KernelSpec::scalar_from(gx, gt, [](double x, double t) {
    return Complex(std::exp(-2.0 * (x - t) * (x - t)), 0.0);
  });
  const PosSesqForm s = kernel_form(spec);
  Rng rng(2);
  AlgebraModel model = make_grid_l2_model(1.0, points);
  const Element a = model.random_element(rng);
  const Element b = model.random_element(rng);
  for (auto _ : state) benchmark::DoNotOptimize(cnorm(s(a, b)));
}

void bm_build_gns(benchmark::State& state) {
  const int n = int(state.range(0));
  AlgebraModel model = make_schatten_model(n, 2.0);
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d[i] = double(n - i) / double(n);
  const HermitianMatrix w(ComplexMatrix(d.cast<Complex>().asDiagonal()));
  const PosSesqForm s = induced_form(trace_map(w, model), model, "trace");
  for (auto _ : state) {
    Rng rng(3);
    benchmark::DoNotOptimize(build_gns(model, s, rng, 10));
  }
}

void bm_transitivity_witness(benchmark::State& state) {
  const BlockSpace space{int(state.range(0)), 2};
  const ShiftPair shift = build_shift(space);
  const BuiltW w =
      build_W(space, lambda_schedule(space, "geometric4"),
              std::vector<ComplexMatrix>(std::size_t(space.block_count()),
                                         ComplexMatrix::Identity(2, 2)));
  Rng rng(4);
  ComplexMatrix f1 = ComplexMatrix::Zero(space.total_dim(), space.total_dim());
  ComplexMatrix f2 = f1;
  for (int j = -2; j <= 2; ++j) {
    const Eigen::Index c = Eigen::Index(space.slot(j)) * 2;
    f1.middleCols(c, 2) = ginibre(rng, space.total_dim()).leftCols(2);
    f2.middleCols(c, 2) = ginibre(rng, space.total_dim()).leftCols(2);
  }
  f1 /= f1.norm();
  f2 /= f2.norm();
  for (auto _ : state)
    benchmark::DoNotOptimize(transitivity_witness(w, shift, f1, f2, 2, 1e-3));
}

}  // namespace

BENCHMARK(bm_schatten_norm)->Arg(20)->Arg(100);
BENCHMARK(bm_kernel_form_eval)->Arg(201)->Arg(801);
BENCHMARK(bm_build_gns)->Arg(4)->Arg(6);
BENCHMARK(bm_transitivity_witness)->Arg(12)->Arg(20);

BENCHMARK_MAIN();
