// Copyright 2026 The qmask Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <numbers>

#include "qmask/kernels.hpp"
#include "qmask/masklib.hpp"
#include "qmask/witness.hpp"

namespace {

using namespace qmask;

void BM_PartialTrace(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const DimProfile dims{d, d, d};
  const DensityMatrix rho = DensityMatrix::from_pure(random_pure_state(dims, 1));
  const FactorSet keep{0, 2};
  const auto table = split_index_table(dims, keep);
  const std::size_t nrows = d * d, ncols = d;
  const bool parallel = state.range(1) != 0;
  for (auto _ : state) {
    Mat out = parallel ? kernels::partial_trace_parallel(rho.mat(), table, nrows, ncols)
                       : kernels::partial_trace_serial(rho.mat(), table, nrows, ncols);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetLabel(parallel ? "parallel" : "serial");
}
BENCHMARK(BM_PartialTrace)->ArgsProduct({{4, 6, 8}, {0, 1}});

std::vector<PureState> tomographic_set() {
  const double h = 1.0 / std::sqrt(2.0);
  Vec plus(2), plus_i(2);
  plus << h, h;
  plus_i << h, cplx(0, h);
  return {PureState::basis(2, 0), PureState::basis(2, 1), PureState(plus), PureState(plus_i)};
}

void BM_Gradient(benchmark::State& state) {
  const auto db = static_cast<std::size_t>(state.range(0));
  const auto states = tomographic_set();
  const kernels::Objective f = [&](std::span<const double> p) {
    return masking_surrogate(isometry_from_params(p, 2, db), 2, db, states, MaskMode::span);
  };
  std::vector<double> x(isometry_param_count(2, db), 0.1);
  const bool parallel = state.range(1) != 0;
  for (auto _ : state) {
    auto g = parallel ? kernels::central_gradient_parallel(f, x, 1e-6)
                      : kernels::central_gradient_serial(f, x, 1e-6);
    benchmark::DoNotOptimize(g.data());
  }
  state.SetLabel(parallel ? "parallel" : "serial");
}
BENCHMARK(BM_Gradient)->ArgsProduct({{2, 4}, {0, 1}});

void BM_Probe(benchmark::State& state) {
  const Masker v = diagonal_masker(static_cast<std::size_t>(state.range(0)));
  const auto exec = state.range(1) != 0 ? kernels::Exec::parallel : kernels::Exec::serial;
  for (auto _ : state) {
    auto report = probe_maskable_family(v, 2000, 3, kDefaultProbeTol, kDefaultEntropyFloor, exec);
    benchmark::DoNotOptimize(report.min_deviation);
  }
  state.SetLabel(state.range(1) != 0 ? "parallel" : "serial");
}
BENCHMARK(BM_Probe)->ArgsProduct({{2, 4}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_OptimizerRestarts(benchmark::State& state) {
  OptimizerConfig cfg;
  cfg.restarts = 4;
  cfg.max_iters = 50;
  const auto exec = state.range(0) != 0 ? kernels::Exec::parallel : kernels::Exec::serial;
  const auto states = tomographic_set();
  for (auto _ : state) {
    auto result = optimize_masker(states, cfg, exec);
    benchmark::DoNotOptimize(result.best_defect);
  }
  state.SetLabel(state.range(0) != 0 ? "parallel" : "serial");
}
BENCHMARK(BM_OptimizerRestarts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
