// Copyright 2026 The carshare Authors.
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

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "carshare/adversaries.hpp"
#include "carshare/harness.hpp"
#include "carshare/oracle.hpp"
#include "carshare/runner.hpp"

using namespace carshare;

namespace {

Instance fuzzed(Count k, std::size_t stages) {
  std::mt19937_64 rng(k * 1000 + stages);
  return random_instance(k, stages, 2 * k, rng);
}

void BM_OptDp(benchmark::State& state) {
  const Instance inst =
      fuzzed(static_cast<Count>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(opt_dp(inst).profit);
}
BENCHMARK(BM_OptDp)->Args({10, 50})->Args({50, 50})->Args({200, 50});

void BM_EvaluateGba(benchmark::State& state) {
  const Instance inst = fuzzed(static_cast<Count>(state.range(0)), 50);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(PolicyId::Gba, inst, std::nullopt).alg);
}
BENCHMARK(BM_EvaluateGba)->Arg(10)->Arg(200);

void BM_ExactExpectation(benchmark::State& state) {
  const auto id = static_cast<PolicyId>(state.range(0));
  const Instance inst = fuzzed(20, 8);
  for (auto _ : state) benchmark::DoNotOptimize(exact_expectation(id, inst).alg);
  state.SetLabel(std::string(to_string(id)));
}
BENCHMARK(BM_ExactExpectation)
    ->Arg(static_cast<int>(PolicyId::Prgba))
    ->Arg(static_cast<int>(PolicyId::Agba));

void BM_MonteCarlo(benchmark::State& state) {
  const Instance inst = fuzzed(20, 8);
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo(PolicyId::Agba, inst, 1000, 42).mean);
}
BENCHMARK(BM_MonteCarlo);

void BM_ExhaustiveGba(benchmark::State& state) {
  Policy gba = Policy::make(PolicyId::Gba);
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_worst(gba, 3, 2, 6, 10'000'000));
}
BENCHMARK(BM_ExhaustiveGba);

}  // namespace

BENCHMARK_MAIN();
