// Copyright 2026 The liegroup-index Authors
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


#include <benchmark/benchmark.h>

#include "liegroup/fourier.hpp"
#include "liegroup/galerkin.hpp"
#include "liegroup/index.hpp"
#include "liegroup/operators.hpp"

using namespace liegroup;

namespace {

void BM_FourierRoundTripSU2(benchmark::State& state) {
  const GroupSpec g = GroupSpec::su2();
  const int band = static_cast<int>(state.range(0));
  const auto rule = make_rule(g, resolving_level(g, 2 * band));
  const auto dual = enumerate_band(g, band);
  FourierCoefficients c(g, dual_cutoff(dual));
  for (const auto& xi : dual) c.push(xi, CMatrix::Identity(xi.dim, xi.dim));
  for (auto _ : state) {
    const auto f = fourier_inverse_on(c, rule);
    benchmark::DoNotOptimize(fourier_forward(f, dual));
  }
}
BENCHMARK(BM_FourierRoundTripSU2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_AssembleSU2(benchmark::State& state) {
  const GroupSpec g = GroupSpec::su2();
  const int band = static_cast<int>(state.range(0));
  const auto sigma = weight_power_symbol(g, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(sigma, band, band));
}
BENCHMARK(BM_AssembleSU2)->Arg(4)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_WindingSweep(benchmark::State& state) {
  const int band = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(stabilization_sweep(Operator::winding(2), {band}, {0.1, 1.0, 10.0}));
  }
}
BENCHMARK(BM_WindingSweep)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_KernelCount(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const CMatrix m = CMatrix::Random(n + 3, n);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_count(m));
}
BENCHMARK(BM_KernelCount)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_HeatTrace(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const CMatrix m = CMatrix::Random(n + 3, n);
  for (auto _ : state) benchmark::DoNotOptimize(heat_trace_index(m, 1.0));
}
BENCHMARK(BM_HeatTrace)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
