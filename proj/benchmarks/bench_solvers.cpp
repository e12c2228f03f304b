// Copyright 2026 The colpursuit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Fixed iteration counts so the timings measure per-iteration cost.

#include <benchmark/benchmark.h>

#include "colpursuit/datagen.hpp"
#include "colpursuit/solvers.hpp"

namespace {

using namespace colpursuit;

constexpr int kIters = 100;

Matrix clustered(Index rows, Index cols, Index rank, std::uint64_t seed) {
  ClusteredLowRankSpec s;
  s.ambient_rows = rows;
  s.cluster_sizes = {cols / 2, cols - cols / 2};
  s.per_cluster_rank = rank;
  s.seed = seed;
  const LowRankBlock L = gen_clustered_lowrank(s);
  return L.L + gen_sparse(rows, cols, 0.01, MagnitudeDist::gaussian(rms_entry(L.L)), seed + 1);
}

SolverConfig fixed_iterations() {
  SolverConfig cfg;
  cfg.gamma_rel = 20;
  cfg.mu_scale = 100;
  cfg.max_iters = kIters;
  cfg.tol = 1e-30;
  return cfg;
}

// Square program, shapes of the cluster-coverage and outlier experiments.
void BM_SelfExpress(benchmark::State& state) {
  const Matrix D = clustered(state.range(0), state.range(1), 5, 3);
  const SolverConfig cfg = fixed_iterations();
  for (auto _ : state) benchmark::DoNotOptimize(solve_selfexpress(D, D, cfg).p.data());
  state.SetItemsProcessed(state.iterations() * kIters);
}
BENCHMARK(BM_SelfExpress)->Args({100, 400})->Args({50, 350})->Args({200, 630})->Unit(benchmark::kMillisecond);

// Sketched program: all columns of a row sketch against a small dictionary.
void BM_SelfExpressSketched(benchmark::State& state) {
  const Matrix D = clustered(state.range(0), 630, 5, 4);
  const Matrix dict = D.leftCols(state.range(1));
  const SolverConfig cfg = fixed_iterations();
  for (auto _ : state) benchmark::DoNotOptimize(solve_selfexpress(D, dict, cfg).p.data());
  state.SetItemsProcessed(state.iterations() * kIters);
}
BENCHMARK(BM_SelfExpressSketched)->Args({100, 60})->Args({100, 180})->Args({250, 180})->Unit(benchmark::kMillisecond);

void BM_OutlierRobust(benchmark::State& state) {
  const Matrix D = clustered(state.range(0), state.range(1), 5, 5);
  SolverConfig cfg = fixed_iterations();
  cfg.lambda = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_outlier_robust(D, cfg).E_star.data());
  state.SetItemsProcessed(state.iterations() * kIters);
}
BENCHMARK(BM_OutlierRobust)->Args({50, 350})->Args({50, 700})->Unit(benchmark::kMillisecond);

}  // namespace
