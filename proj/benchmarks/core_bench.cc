// Copyright 2026 The entsrc Authors
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

#include "entsrc/bayes.hpp"
#include "entsrc/measure.hpp"
#include "entsrc/modelsel.hpp"
#include "entsrc/qcore.hpp"
#include "entsrc/statefam.hpp"

using namespace entsrc;

static void BM_eig_hermitian(benchmark::State& state) {
  const Matrix4 m = partial_transpose(reference_mixture(ReferenceMixture::kAmplitude09));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eig_hermitian(m));
  }
}
BENCHMARK(BM_eig_hermitian);

static void BM_negativity(benchmark::State& state) {
  const DensityMatrix rho = two_param_state({0.4, 0.4});
  for (auto _ : state) {
    benchmark::DoNotOptimize(negativity(rho));
  }
}
BENCHMARK(BM_negativity);

static void BM_coherence_factor(benchmark::State& state) {
  double sigma = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(coherence_factor(sigma));
    sigma = sigma > 3.0 ? 0.1 : sigma + 0.01;
  }
}
BENCHMARK(BM_coherence_factor);

static void BM_simulate_record(benchmark::State& state) {
  const DensityMatrix rho = two_param_state({0.4, 0.4});
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_record(rho, state.range(0), seed++));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 5);
}
BENCHMARK(BM_simulate_record)->Arg(400)->Arg(1000)->Arg(100000);

static void BM_update_posterior_grid(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const TestSet ts = grid_prior_two_param(n, n);
  const MeasurementRecord rec = simulate_record(two_param_state({0.4, 0.4}), 400, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(update_posterior(ts, rec));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ts.size()));
}
BENCHMARK(BM_update_posterior_grid)->Arg(100)->Arg(600)->Unit(benchmark::kMillisecond);

static void BM_grid_prior(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(grid_prior_two_param(n, n));
  }
}
BENCHMARK(BM_grid_prior)->Arg(100)->Arg(600)->Unit(benchmark::kMillisecond);

static void BM_compare(benchmark::State& state) {
  const MeasurementRecord rec = simulate_record(reference_mixture(ReferenceMixture::kAmplitude09), 1000, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compare(rec));
  }
}
BENCHMARK(BM_compare);

BENCHMARK_MAIN();
