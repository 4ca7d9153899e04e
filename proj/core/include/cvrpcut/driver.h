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


// Root-node cutting-plane loop: solve the relaxation, separate over every
// m in [0, K-1] concurrently, add the violated cuts, repeat.

#ifndef CVRPCUT_DRIVER_H_
#define CVRPCUT_DRIVER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cvrpcut/coarsen.h"
#include "cvrpcut/common.h"
#include "cvrpcut/instance.h"
#include "cvrpcut/relaxation.h"

namespace cvrpcut {

enum class Strategy { kExact, kCoarsen, kCoarsenGraphChip };

const char* to_string(Strategy strategy);
// Accepts exact, coarsen, coarsen+graphchip.
Strategy parse_strategy(const std::string& name);

struct DriverConfig {
  Strategy strategy = Strategy::kCoarsenGraphChip;
  EdgePolicy policy;  // policy.seed is replaced per task
  double gamma = 0.75;
  uint64_t seed = 0;
  int max_iterations = 100;
  double time_limit_s = 3600.0;
  double pool_violation = tol::kPoolViolation;
  bool fci = false;
  double fci_gate = 1.0;
  std::optional<double> ub;
  int jobs = 0;  // 0: hardware concurrency
  // Not owned; the heuristic oracle is used when null.
  const ProbabilityOracle* oracle = nullptr;
  int64_t exact_node_limit = 0;
};

void validate(const DriverConfig& config);

// Seed of the separation task for (iteration, m).
uint64_t task_seed(uint64_t seed, int iteration, int m);

struct CutLogEntry {
  Cut cut;
  double lhs = 0.0;
  int iteration = 0;
  int m = 0;
};

struct SeparationRound {
  // Violated, deduplicated, in canonical order.
  std::vector<CutLogEntry> cuts;
  double max_rci_violation = 0.0;
  bool fci_ran = false;
  int64_t graphchip_checks = 0;
};

// One separation pass over all m. Cuts already in `pool` are dropped.
SeparationRound separate_round(const Instance& inst,
                               const FractionalSolution& sol,
                               const DriverConfig& config, int iteration,
                               const CutPool* pool = nullptr);

struct RootResult {
  std::string instance;
  Strategy strategy = Strategy::kExact;
  SelectionRule policy = SelectionRule::kGreedy;
  bool fci = false;
  uint64_t seed = 0;
  double lb = 0.0;
  double ub = 0.0;
  std::string ub_source;  // "user" or "savings"
  double gap = 0.0;
  int iterations = 0;
  int64_t rci_cuts = 0;
  int64_t fci_cuts = 0;
  std::vector<double> lb_history;  // [0] is the plain relaxation
  std::vector<CutLogEntry> cut_log;
  std::string stop_reason;  // no-cuts, iteration-limit, time-limit
  int64_t lp_iterations = 0;
  double wall_time_s = 0.0;
  FractionalSolution solution;  // final LP point
};

RootResult run_root(const Instance& inst, const DriverConfig& config);

// Helper for concurrent loops: runs body(i) for i in [0, count) on up to
// `jobs` threads (0: hardware concurrency).
void parallel_for(int count, int jobs, const std::function<void(int)>& body);

}  // namespace cvrpcut

#endif  // CVRPCUT_DRIVER_H_
