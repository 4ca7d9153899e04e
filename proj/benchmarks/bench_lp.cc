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
#include "cvrpcut/lp.h"
#include "cvrpcut/relaxation.h"

namespace cvrpcut {
namespace {

void BM_SolveRelaxation(benchmark::State& state) {
  const Instance inst = generate_random(static_cast<int>(state.range(0)), 4);
  const LinearProgram lp = build_relaxation(inst);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(lp));
}
BENCHMARK(BM_SolveRelaxation)
    ->RangeMultiplier(2)
    ->Range(25, 200)
    ->Unit(benchmark::kMillisecond);

// Re-solve after one round of cuts, from the previous optimal basis.
void BM_WarmStartAfterCuts(benchmark::State& state) {
  const Instance inst = generate_random(static_cast<int>(state.range(0)), 5);
  LinearProgram lp = build_relaxation(inst);
  const LpSolution first = solve_lp(lp);
  DriverConfig cfg;
  cfg.jobs = 1;
  CutPool pool;
  for (const CutLogEntry& e :
       separate_round(inst, to_fractional(inst, first), cfg, 1).cuts) {
    add_cut(lp, pool, e.cut, inst.n());
  }
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(lp, &first.basis));
  state.counters["cuts"] = static_cast<double>(pool.size());
}
BENCHMARK(BM_WarmStartAfterCuts)
    ->RangeMultiplier(2)
    ->Range(25, 200)
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace cvrpcut
