// Copyright 2026 The cvrpcut Authors
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

#include "cvrpcut/driver.h"
#include "cvrpcut/sep_rci.h"

namespace cvrpcut {
namespace {

void BM_ExactSeparation(benchmark::State& state) {
  const Instance inst = generate_random(static_cast<int>(state.range(0)), 6);
  const FractionalSolution x =
      to_fractional(inst, solve_lp(build_relaxation(inst)));
  const int m = static_cast<int>(state.range(1));
  const SupportGraph g = build_support(x, inst, m);
  for (auto _ : state) benchmark::DoNotOptimize(exact_separate(g, m));
}
BENCHMARK(BM_ExactSeparation)
    ->ArgsProduct({{15, 25, 50}, {0, 1, 2}})
    ->Unit(benchmark::kMillisecond);

void BM_SeparationRound(benchmark::State& state) {
  const Instance inst = generate_random(static_cast<int>(state.range(0)), 7);
  const FractionalSolution x =
      to_fractional(inst, solve_lp(build_relaxation(inst)));
  DriverConfig cfg;
  cfg.strategy = static_cast<Strategy>(state.range(1));
  cfg.jobs = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(separate_round(inst, x, cfg, 1));
  }
}
BENCHMARK(BM_SeparationRound)
    ->ArgsProduct({{50, 100}, {1, 2}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace cvrpcut
