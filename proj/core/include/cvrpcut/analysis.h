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


// Sensitivity and diversity metrics over probability oracles.

#ifndef CVRPCUT_ANALYSIS_H_
#define CVRPCUT_ANALYSIS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cvrpcut/coarsen.h"
#include "cvrpcut/instance.h"
#include "cvrpcut/relaxation.h"

namespace cvrpcut {

// max_i |Phi_i(g + eps e2) - Phi_i(g)| / eps over customers, where e2 shifts
// the second feature of every vertex.
double d1_partial(const ProbabilityOracle& oracle, const SupportGraph& graph,
                  double eps = 1e-3);

// Cosine similarity. Throws ValidationError for a zero vector or a length
// mismatch.
double d2_cosine(std::span<const double> a, std::span<const double> b);

// |A & B| / |A | B| for vertex sets (any order, no duplicates). Two empty
// sets give 1.
double d3_jaccard(std::span<const int> a, std::span<const int> b);

struct Quartiles {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  int64_t count = 0;
};

// Linear interpolation between order statistics.
Quartiles quartiles(std::vector<double> values);

// An LP point for studying oracles: the relaxation after `rounds` rounds of
// greedy coarsening cuts.
FractionalSolution study_solution(const Instance& inst, int rounds = 3,
                                  int jobs = 1);

struct SensitivityOptions {
  double eps = 1e-3;
  double gamma = 0.75;
  int cut_rounds = 3;
  int jobs = 0;
};

struct SensitivityRecord {
  std::string instance;
  int m = 0;
  double d1 = 0.0;
  // Against m + 1; absent for m = K - 1.
  bool has_next = false;
  double d2 = 0.0;
  double d3 = 0.0;
  bool both_empty = false;
};

struct SensitivityReport {
  std::vector<SensitivityRecord> records;
  Quartiles d1;
  Quartiles d2;
  Quartiles d3;
  int64_t empty_pairs = 0;  // pairs where both subsets were empty
};

SensitivityReport sensitivity_study(std::span<const Instance> instances,
                                    const ProbabilityOracle& oracle,
                                    const SensitivityOptions& options = {});

struct DiversityOptions {
  double gamma = 0.75;
  int cut_rounds = 3;
  int jobs = 0;
};

struct DiversityCell {
  std::string instance;
  int customers = 0;
  std::string policy;
  int runs = 0;
  double mean_jaccard = 0.0;  // over all m and seed pairs
};

struct DiversityReport {
  std::vector<DiversityCell> cells;
  int64_t empty_pairs = 0;
};

// For every instance, m and policy, coarsens once per seed and averages the
// pairwise Jaccard index of the resulting subsets.
DiversityReport diversity_study(std::span<const Instance> instances,
                                const ProbabilityOracle& oracle,
                                std::span<const EdgePolicy> policies,
                                std::span<const uint64_t> seeds,
                                const DiversityOptions& options = {});

}  // namespace cvrpcut

#endif  // CVRPCUT_ANALYSIS_H_
