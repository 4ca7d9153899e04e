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

#include <random>
#include <vector>

#include "cvrpcut/bin_packing.h"

namespace cvrpcut {
namespace {

BinPackingItems random_items(int64_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int64_t> w(1, 1000);
  BinPackingItems items{{}, 1000};
  for (int64_t i = 0; i < n; ++i) items.weights.push_back(w(rng));
  return items;
}

void BM_L2(benchmark::State& state) {
  const BinPackingItems items = random_items(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(l2_lower_bound(items));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_L2)->RangeMultiplier(4)->Range(16, 1 << 16)->Complexity(
    benchmark::oNLogN);

void BM_Ffd(benchmark::State& state) {
  const BinPackingItems items = random_items(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(ffd_upper_bound(items));
}
BENCHMARK(BM_Ffd)->RangeMultiplier(4)->Range(16, 4096);

void BM_BppExact(benchmark::State& state) {
  std::vector<BinPackingItems> sets;
  for (uint64_t s = 0; s < 64; ++s) sets.push_back(random_items(state.range(0), s));
  size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bpp_exact(sets[k++ % sets.size()]));
  }
}
BENCHMARK(BM_BppExact)->DenseRange(5, 25, 5);

}  // namespace
}  // namespace cvrpcut
