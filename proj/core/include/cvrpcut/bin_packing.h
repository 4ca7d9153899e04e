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


// Bin-packing bounds for the vehicle count r of a set of demand items.

#ifndef CVRPCUT_BIN_PACKING_H_
#define CVRPCUT_BIN_PACKING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cvrpcut {

struct BinPackingItems {
  std::vector<int64_t> weights;  // each in [1, capacity]
  int64_t capacity = 1;
};

// Elementary-operation tally (comparisons and loop steps), used to check
// the growth rate of the bound computations.
struct OpCounter {
  int64_t ops = 0;
};

// Splits every demand d into floor(d/Q) items of weight Q and one item of
// weight d mod Q (dropped when zero).
BinPackingItems to_items(std::span<const int64_t> demands, int64_t capacity,
                         OpCounter* counter = nullptr);

void validate(const BinPackingItems& items);

// Martello-Toth L2.
int64_t l2_lower_bound(const BinPackingItems& items,
                       OpCounter* counter = nullptr);

// First-fit decreasing.
int64_t ffd_upper_bound(const BinPackingItems& items);

inline constexpr int kBppExactMaxItems = 25;

// Branch-and-bound optimum, or nullopt once `node_limit` nodes have been
// explored. Throws ValidationError above kBppExactMaxItems items.
std::optional<int64_t> bpp_exact(const BinPackingItems& items,
                                 int64_t node_limit = 1'000'000);

}  // namespace cvrpcut

#endif  // CVRPCUT_BIN_PACKING_H_
