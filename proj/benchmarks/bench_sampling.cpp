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


#include <benchmark/benchmark.h>

#include "colpursuit/datagen.hpp"
#include "colpursuit/evaluation.hpp"
#include "colpursuit/rng.hpp"
#include "colpursuit/sampling.hpp"

namespace {

using namespace colpursuit;

void BM_TrimResidual(benchmark::State& state) {
  Engine e(1);
  const Matrix F = standard_normal(state.range(0), 630, e);
  for (auto _ : state) benchmark::DoNotOptimize(trim_residual(F, 10).data());
  state.SetItemsProcessed(state.iterations() * F.size());
}
BENCHMARK(BM_TrimResidual)->Arg(100)->Arg(250);

void BM_Algorithm1(benchmark::State& state) {
  ClusteredLowRankSpec s;
  s.ambient_rows = 200;
  s.cluster_sizes.assign(20, 20);
  s.per_cluster_rank = 1;
  s.seed = 2;
  const LowRankBlock L = gen_clustered_lowrank(s);
  const Matrix D = L.L + gen_sparse(200, 400, 0.01, MagnitudeDist::gaussian(rms_entry(L.L)), 3);
  Alg1Config cfg;
  cfg.r_hat = 20;
  cfg.row_count = 100;
  cfg.k_max = static_cast<int>(state.range(0));
  cfg.seed = 4;
  cfg.solver.gamma_rel = 20;
  cfg.solver.mu_scale = 100;
  cfg.solver.max_iters = 200;
  cfg.solver.tol = 1e-30;
  for (auto _ : state) benchmark::DoNotOptimize(algorithm1(D, cfg).sampled.data());
}
BENCHMARK(BM_Algorithm1)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_RandomSamplingCurve(benchmark::State& state) {
  ClusteredLowRankSpec s;
  s.ambient_rows = 500;
  s.cluster_sizes.assign(30, 5);
  s.cluster_sizes.insert(s.cluster_sizes.end(), 30, 20);
  s.per_cluster_rank = 1;
  s.seed = 5;
  const Matrix L = gen_clustered_lowrank(s).L;
  const std::vector<Index> grid = {50, 200, 375, 750};
  for (auto _ : state) benchmark::DoNotOptimize(random_sampling_curve(L, grid, 10, 6).data());
}
BENCHMARK(BM_RandomSamplingCurve)->Unit(benchmark::kMillisecond);

}  // namespace
