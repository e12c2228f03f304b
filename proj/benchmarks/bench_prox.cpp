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

#include "colpursuit/prox.hpp"
#include "colpursuit/rng.hpp"

namespace {

using colpursuit::Matrix;

Matrix input(benchmark::State& state) {
  colpursuit::Engine e(1);
  return colpursuit::standard_normal(state.range(0), state.range(0), e);
}

void BM_SoftThreshold(benchmark::State& state) {
  const Matrix x = input(state);
  Matrix work;
  for (auto _ : state) {
    work = x;
    colpursuit::soft_threshold_inplace(work, 0.5);
    benchmark::DoNotOptimize(work.data());
  }
  state.SetItemsProcessed(state.iterations() * x.size());
}
BENCHMARK(BM_SoftThreshold)->Arg(100)->Arg(400)->Arg(1000);

void BM_ColumnThreshold(benchmark::State& state) {
  const Matrix x = input(state);
  Matrix work;
  for (auto _ : state) {
    work = x;
    colpursuit::column_threshold_inplace(work, 3.0);
    benchmark::DoNotOptimize(work.data());
  }
  state.SetItemsProcessed(state.iterations() * x.size());
}
BENCHMARK(BM_ColumnThreshold)->Arg(100)->Arg(400)->Arg(1000);

void BM_RowThreshold(benchmark::State& state) {
  const Matrix x = input(state);
  Matrix work;
  for (auto _ : state) {
    work = x;
    colpursuit::row_threshold_inplace(work, 3.0);
    benchmark::DoNotOptimize(work.data());
  }
  state.SetItemsProcessed(state.iterations() * x.size());
}
BENCHMARK(BM_RowThreshold)->Arg(100)->Arg(400)->Arg(1000);

}  // namespace
