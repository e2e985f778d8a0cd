// Copyright 2026 The Qubus Repeater Authors
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

// Serial reference vs OpenMP kernels. Run with --benchmark_filter to pick a
// pair; the /0 argument is serial, /1 parallel.

#include <random>

#include <benchmark/benchmark.h>

#include "qubus/fock_oracle.hpp"
#include "qubus/montecarlo.hpp"
#include "qubus/sweep.hpp"

namespace {

using namespace qubus;

Execution exec_of(const benchmark::State& state) {
  return state.range(0) != 0 ? Execution::parallel : Execution::serial;
}

void BM_AxisMatrix(benchmark::State& state) {
  const auto kernel = state.range(0) != 0 ? oracle::Kernel::parallel : oracle::Kernel::serial;
  const auto n = static_cast<std::size_t>(state.range(1));
  oracle::FockVector v = oracle::tensor(oracle::prepare_coherent(CoherentLabel(1.5), n - 1),
                                        oracle::prepare_coherent(CoherentLabel(cplx(0.0, 1.0)), n - 1));
  v = oracle::tensor(v, oracle::prepare_vacuum(n - 1));
  const Eigen::MatrixXcd m = oracle::displacement_matrix(n, cplx(0.3, -0.2));
  for (auto _ : state) {
    oracle::FockVector w = v;
    oracle::apply_axis_matrix(w, 1, m, kernel);
    benchmark::DoNotOptimize(w.amp.data());
  }
}
BENCHMARK(BM_AxisMatrix)->ArgsProduct({{0, 1}, {48, 64}})->Unit(benchmark::kMillisecond);

LinkParams mc_params() {
  LinkParams p;
  p.alpha = 200.0;
  p.distance_km = 10.0;
  p.lambda_bs = 0.4;
  return p;
}

void BM_SamplePatterns(benchmark::State& state) {
  const auto p = mc_params();
  for (auto _ : state) {
    const auto c = state.range(0) != 0 ? sample_patterns(p, 1'000'000, 20070101)
                                       : sample_patterns_serial(p, 1'000'000, 20070101);
    benchmark::DoNotOptimize(c.data());
  }
}
BENCHMARK(BM_SamplePatterns)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Fig2(benchmark::State& state) {
  Fig2Config c;
  for (int i = 0; i < 2000; ++i) c.alphas.push_back(500.0 * i / 1999.0);
  c.distances_km = {1, 5, 10, 20};
  for (auto _ : state) benchmark::DoNotOptimize(fig2_table(c, exec_of(state)).data());
}
BENCHMARK(BM_Fig2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Fig6(benchmark::State& state) {
  Fig6Config c;
  for (int i = 0; i < 500; ++i) c.fidelities.push_back(0.505 + 0.495 * i / 499.0);
  c.distances_km = {10, 20, 30, 50, 100};
  for (auto _ : state) benchmark::DoNotOptimize(fig6_table(c, exec_of(state)).data());
}
BENCHMARK(BM_Fig6)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
