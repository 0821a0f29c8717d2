// Copyright 2026 The Variability Toolkit Authors
//
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

// OpenMP kernels against their serial twins.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "variability/loess.h"
#include "variability/stl.h"

namespace variability {
namespace {

std::vector<double> Series(int n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> noise(0, 3);
  std::vector<double> y(n);
  for (int t = 0; t < n; ++t) {
    y[t] = 110 + 8 * std::sin(2 * std::numbers::pi * t / 24) + noise(rng);
  }
  return y;
}

std::vector<double> Index(int n) {
  std::vector<double> x(n);
  for (int t = 0; t < n; ++t) x[t] = t;
  return x;
}

template <bool kParallel>
void BM_Loess(benchmark::State& state) {
  const int n = state.range(0);
  const auto x = Index(n);
  const auto y = Series(n);
  for (auto _ : state) {
    auto fit = kParallel ? LoessSmooth(x, y, 101, 1) : LoessSmoothSerial(x, y, 101, 1);
    benchmark::DoNotOptimize(fit);
  }
  state.SetItemsProcessed(state.iterations() * n);
}

template <bool kParallel>
void BM_Stl(benchmark::State& state) {
  const auto y = Series(state.range(0));
  StlParams params;
  params.outer_iterations = 2;
  for (auto _ : state) {
    auto d = kParallel ? StlDecompose(y, params) : StlDecomposeSerial(y, params);
    benchmark::DoNotOptimize(d);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_Loess<true>)->Name("loess/omp")->Arg(2000)->Arg(20000);
BENCHMARK(BM_Loess<false>)->Name("loess/serial")->Arg(2000)->Arg(20000);
// 77 days and one year of hourly means.
BENCHMARK(BM_Stl<true>)->Name("stl/omp")->Arg(1848)->Arg(8760);
BENCHMARK(BM_Stl<false>)->Name("stl/serial")->Arg(1848)->Arg(8760);

}  // namespace
}  // namespace variability

BENCHMARK_MAIN();
