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


// Framed capacity inequality separation over the coarsening node maps, with
// the frame fixed to all customers.

#ifndef CVRPCUT_SEP_FCI_H_
#define CVRPCUT_SEP_FCI_H_

#include <cstdint>
#include <span>
#include <vector>

#include "cvrpcut/bin_packing.h"
#include "cvrpcut/coarsen.h"
#include "cvrpcut/relaxation.h"

namespace cvrpcut {

struct Partition {
  std::vector<int> frame;                 // H, sorted
  std::vector<std::vector<int>> members;  // partition of H
  std::vector<int64_t> demands;           // d(S_i), parallel to members
};

// Throws ValidationError unless the members are nonempty, pairwise disjoint
// and cover the frame.
void validate(const Partition& partition);

// 2 r + 2 sum_i ceil(d(S_i)/Q).
int64_t fci_rhs(std::span<const int64_t> member_demands, int64_t capacity,
                int64_t r_value);
int64_t fci_rhs(const Partition& partition, int64_t capacity, int64_t r_value);

struct FciEvaluation {
  int64_t rhs = 0;
  double lhs = 0.0;
  double violation = 0.0;
};

// Evaluates the inequality from aggregate boundary values x(delta(H)) and
// x(delta(S_i)).
FciEvaluation evaluate_fci(double frame_boundary,
                           std::span<const double> member_boundaries,
                           std::span<const int64_t> member_demands,
                           int64_t capacity, int64_t r_value);

struct BinBound {
  int64_t value = 0;
  BinBoundTag tag = BinBoundTag::kLowerBound;
};

// L2, upgraded to the exact optimum when L2 = FFD, or when L2 < FFD and the
// item count allows the exact solver to finish within `node_limit`.
BinBound bin_bound(const BinPackingItems& items, OpCounter* counter = nullptr,
                   int64_t node_limit = 100'000);

struct FciCandidate {
  Partition partition;
  BinPackingItems items;
  int64_t r_value = 0;
  BinBoundTag r_tag = BinBoundTag::kLowerBound;
  int64_t rhs = 0;
  double lhs = 0.0;
  double violation = 0.0;
  int64_t screening_rhs = 0;  // rhs with r = ceil(d(H)/Q)
  int level = 0;
};

struct GraphChipFciStats {
  int levels_scanned = 0;
  int partitions_built = 0;
  int levels_skipped = 0;  // a member violated its own RCI
  int screened_out = 0;
  // Work per partition: size of the item list and operations spent on item
  // preparation plus the L2 bound.
  struct LevelWork {
    int64_t items = 0;
    int64_t ops = 0;
  };
  std::vector<LevelWork> work;
};

// For t = T-1 down to 1: members are the supernodes of level t inside
// `subset` plus a singleton for every other customer. Levels where a member
// violates its RCI are skipped; the rest are screened with r = ceil(d(V_C)/Q)
// (kept when rhs - lhs > -2) and then priced with bin_bound. Candidates with
// positive violation are returned; every level is scanned.
std::vector<FciCandidate> graphchip_fci(const SupportGraph& graph,
                                        std::span<const int> subset,
                                        const CoarseningHistory& history,
                                        GraphChipFciStats* stats = nullptr);

// rhs - cut_lhs on a full solution.
double fci_check(const FractionalSolution& sol, const FciCandidate& candidate);

Cut to_cut(const FciCandidate& candidate);

}  // namespace cvrpcut

#endif  // CVRPCUT_SEP_FCI_H_
