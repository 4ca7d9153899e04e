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

// Rounded capacity inequality separation: the exact MILP, the coarsening
// heuristic, and history backtracking over the coarsening node maps.

#ifndef CVRPCUT_SEP_RCI_H_
#define CVRPCUT_SEP_RCI_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cvrpcut/coarsen.h"
#include "cvrpcut/relaxation.h"

namespace cvrpcut {

// 2 * ceil(demand_sum / Q).
int64_t rci_rhs(int64_t demand_sum, int64_t capacity);

struct RciCandidate {
  std::vector<int> subset;  // sorted customers
  double lhs = 0.0;
  int64_t rhs = 0;
  double violation = 0.0;  // rhs - lhs
  CutSource source = CutSource::kExact;
  bool lifted = false;
};

// Scores `subset` against the support graph with rhs = 2 ceil(d(S)/Q).
RciCandidate evaluate_rci(const SupportGraph& graph, std::vector<int> subset,
                          CutSource source);

Cut to_cut(const RciCandidate& candidate);

struct ExactSeparationResult {
  bool feasible = false;  // some S has d(S) >= mQ + 1
  double z = 0.0;         // min x(delta(S)) over those S
  std::vector<int> subset;
  int64_t nodes = 0;
  bool proven = false;  // false when the node limit stopped the search
};

// min sum_e x_e w_e  s.t.  w_ij >= y_i - y_j,  w_ij >= y_j - y_i,
// sum_i q_i y_i >= mQ + 1,  y_0 = 0,  y binary,  w >= 0.
// With a cutoff only values strictly below it are sought, and an
// infeasible result means none exists.
ExactSeparationResult solve_exact_separation(
    const SupportGraph& graph, int m,
    std::optional<double> cutoff = std::nullopt, int64_t node_limit = 0);

// A cut when z(m) < 2(m + 1) - 1e-6. The rhs is 2(m + 1), raised to
// 2 ceil(d(S)/Q) when that is larger (then `lifted` is set).
std::optional<RciCandidate> exact_separate(const SupportGraph& graph, int m,
                                           int64_t node_limit = 0);

struct CoarseningSeparation {
  std::optional<RciCandidate> candidate;  // may be non-violated
  CoarseningResult coarsening;
};

CoarseningSeparation coarsening_separate(const SupportGraph& graph,
                                         const ProbabilityOracle& oracle,
                                         const EdgePolicy& policy,
                                         double gamma = 0.75);

struct GraphChipStats {
  int64_t checks = 0;  // RCI evaluations on the original support graph
  int levels_scanned = 0;
};

// Walks the node maps from level T-1 down to 1 and checks the RCI of every
// supernode inside `subset`. Returns the violated ones of the first level
// that has any. Does nothing when `violation` (of `subset`) is positive.
std::vector<RciCandidate> graphchip_rci(const SupportGraph& graph,
                                        std::span<const int> subset,
                                        double violation,
                                        const CoarseningHistory& history,
                                        GraphChipStats* stats = nullptr);

// Supernodes of level t lying inside `subset`, as original-vertex sets.
std::vector<std::vector<int>> supernodes_within(
    const CoarseningHistory& history, int t, std::span<const int> subset);

}  // namespace cvrpcut

#endif  // CVRPCUT_SEP_RCI_H_
