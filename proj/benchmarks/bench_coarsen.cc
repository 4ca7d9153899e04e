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

#include <numeric>
#include <vector>

#include "cvrpcut/coarsen.h"
#include "cvrpcut/driver.h"
#include "cvrpcut/sep_fci.h"
#include "cvrpcut/sep_rci.h"

namespace cvrpcut {
namespace {

SupportGraph relaxation_support(int customers) {
  const Instance inst = generate_random(customers, 3);
  const FractionalSolution x =
      to_fractional(inst, solve_lp(build_relaxation(inst)));
  return build_support(x, inst, 0);
}

void BM_Coarsen(benchmark::State& state) {
  const SupportGraph g = relaxation_support(static_cast<int>(state.range(0)));
  const HeuristicOracle oracle;
  EdgePolicy policy;
  policy.rule = static_cast<SelectionRule>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(coarsen(g, oracle, policy));
  }
}
BENCHMARK(BM_Coarsen)
    ->ArgsProduct({{50, 100, 200, 400}, {0, 1, 2, 3}})
    ->Unit(benchmark::kMillisecond);

void BM_GraphChip(benchmark::State& state) {
  const SupportGraph g = relaxation_support(static_cast<int>(state.range(0)));
  const CoarseningSeparation cs =
      coarsening_separate(g, HeuristicOracle(), EdgePolicy{});
  std::vector<int> all(g.n - 1);
  std::iota(all.begin(), all.end(), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        graphchip_rci(g, all, -1.0, cs.coarsening.history));
    benchmark::DoNotOptimize(graphchip_fci(g, all, cs.coarsening.history));
  }
}
BENCHMARK(BM_GraphChip)->RangeMultiplier(2)->Range(50, 400);

}  // namespace
}  // namespace cvrpcut
