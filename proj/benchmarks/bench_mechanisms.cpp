// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "liftlab/harness.hpp"

namespace {

using namespace liftlab;

JointDistribution bench_joint(std::size_t ns, std::size_t nx) {
  return sample_random_joint(ns, nx, mix_seed(9001, ns * 1000 + nx));
}

void BM_LiftTable(benchmark::State& state) {
  const auto j = bench_joint(5, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lift_table(j));
  }
}
BENCHMARK(BM_LiftTable)->Arg(17)->Arg(64)->Arg(200);

void BM_AvgMeasures(benchmark::State& state) {
  const auto j = bench_joint(5, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(avg_measures(j, 2.0));
  }
}
BENCHMARK(BM_AvgMeasures);

void BM_WatchdogComplete(benchmark::State& state) {
  const auto j = bench_joint(5, static_cast<std::size_t>(state.range(0)));
  const Budget b = Budget::split(2.0, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        complete_merge_mechanism(j, MeasureKind::alip(), b));
  }
}
BENCHMARK(BM_WatchdogComplete)->Arg(17)->Arg(64);

void BM_WatchdogSubset(benchmark::State& state) {
  const auto j = bench_joint(5, static_cast<std::size_t>(state.range(0)));
  const Budget b = Budget::split(2.0, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(subset_merge_mechanism(j, MeasureKind::alip(), b));
  }
}
BENCHMARK(BM_WatchdogSubset)->Arg(17)->Arg(64);

void BM_OptimalResponse(benchmark::State& state) {
  const auto j = bench_joint(3, static_cast<std::size_t>(state.range(0)));
  const Budget b = Budget::split(1.0, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_response(j, b));
  }
}
BENCHMARK(BM_OptimalResponse)->Arg(4)->Arg(6)->Arg(8);

void BM_SubsetResponse(benchmark::State& state) {
  const auto j = bench_joint(5, static_cast<std::size_t>(state.range(0)));
  const Budget b = Budget::split(2.0, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        subset_response_mechanism(j, MeasureKind::alip(), b));
  }
}
BENCHMARK(BM_SubsetResponse)->Arg(17)->Arg(64);

void BM_Sweep(benchmark::State& state) {
  SweepOptions opt;
  opt.num_secrets = 4;
  opt.num_symbols = 8;
  opt.trials = 16;
  opt.eps_values = {0.5, 1.0, 2.0};
  opt.lambdas = {0.5};
  opt.mechanisms = {MechanismId::kWatchdogSubset};
  opt.seed = 7;
  opt.measure_time = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep(opt));
  }
}
BENCHMARK(BM_Sweep);

}  // namespace

BENCHMARK_MAIN();
