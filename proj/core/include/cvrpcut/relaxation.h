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

// Two-index CVRP relaxation, capacity cuts and the cut pool.

#ifndef CVRPCUT_RELAXATION_H_
#define CVRPCUT_RELAXATION_H_

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cvrpcut/instance.h"
#include "cvrpcut/lp.h"

namespace cvrpcut {

// Edges (i, j), i < j, of the complete graph on n vertices are numbered
// row by row: (0,1), (0,2), ..., (0,n-1), (1,2), ...
inline int num_edges(int n) { return n * (n - 1) / 2; }
inline int edge_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double x = 0.0;
  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

// Edge values x_ij of an LP (or integer) solution over the complete graph.
class FractionalSolution {
 public:
  FractionalSolution() = default;
  FractionalSolution(int n, std::vector<double> values, double objective = 0.0);
  // Edges not listed are 0. Throws ValidationError on bad endpoints.
  static FractionalSolution from_edges(int n,
                                       std::span<const WeightedEdge> edges,
                                       double objective = 0.0);

  int n() const { return n_; }
  double value(int i, int j) const { return values_[edge_index(n_, i, j)]; }
  std::span<const double> values() const { return values_; }
  double objective() const { return objective_; }
  // Edges with value above `threshold`, sorted by (u, v).
  std::vector<WeightedEdge> support(double threshold = 1e-9) const;
  double degree(int i) const;

 private:
  int n_ = 0;
  std::vector<double> values_;
  double objective_ = 0.0;
};

enum class CutKind { kRci, kFci };
enum class CutSource { kExact, kCoarsen, kGraphChipRci, kGraphChipFci };
enum class BinBoundTag { kLowerBound, kExact };

const char* to_string(CutKind kind);
const char* to_string(CutSource source);
const char* to_string(BinBoundTag tag);

struct FciDetail {
  std::vector<int64_t> items;  // bin-packing weights after splitting
  int64_t r_value = 0;
  BinBoundTag r_tag = BinBoundTag::kLowerBound;
};

// RCI:  x(delta(S)) >= 2 ceil(d(S)/Q)                       (subset = S)
// FCI:  x(delta(H)) + sum_i x(delta(S_i)) >= 2 r + 2 sum_i ceil(d(S_i)/Q)
//       (frame = H, members = the partition of H)
struct Cut {
  CutKind kind = CutKind::kRci;
  std::vector<int> subset;
  std::vector<int> frame;
  std::vector<std::vector<int>> members;
  int64_t rhs = 0;
  double violation = 0.0;  // at discovery
  CutSource source = CutSource::kExact;
  bool lifted = false;
  std::optional<FciDetail> fci;
};

// Sum of boundary values over a vertex set, given as a 0/1 mask of size n.
double boundary_value(std::span<const WeightedEdge> edges,
                      std::span<const char> in_set);
double boundary_value(std::span<const WeightedEdge> edges, int n,
                      std::span<const int> vertices);

double cut_lhs(const FractionalSolution& sol, const Cut& cut);
// Coefficient of every edge variable in the cut row.
std::vector<double> cut_coefficients(int n, const Cut& cut);
// Canonical identity used for duplicate detection.
std::vector<int> cut_key(const Cut& cut);

// One variable per edge; |V_C| degree equalities; customer edges in [0,1],
// depot edges in [0,2]; objective = edge costs.
LinearProgram build_relaxation(const Instance& inst);

class CutPool {
 public:
  bool contains(const Cut& cut) const { return keys_.count(cut_key(cut)) > 0; }
  size_t size() const { return cuts_.size(); }
  const std::vector<Cut>& cuts() const { return cuts_; }
  const std::vector<int>& rows() const { return rows_; }

 private:
  friend std::optional<int> add_cut(LinearProgram& lp, CutPool& pool,
                                    const Cut& cut, int n);
  std::set<std::vector<int>> keys_;
  std::vector<Cut> cuts_;
  std::vector<int> rows_;
};

// Appends "row >= rhs" and records the cut. Returns the new row index, or
// nullopt when the pool already holds the same cut.
std::optional<int> add_cut(LinearProgram& lp, CutPool& pool, const Cut& cut,
                           int n);

// (ub - lb) / ub * 100. Throws ValidationError if ub <= 0.
double gap(double ub, double lb);

// LP solution as a FractionalSolution (x values indexed like the edges).
FractionalSolution to_fractional(const Instance& inst, const LpSolution& sol);

// Routes as customer sequences (depot implicit at both ends).
using RouteSet = std::vector<std::vector<int>>;
int64_t route_set_cost(const Instance& inst, const RouteSet& routes);
FractionalSolution route_set_solution(const Instance& inst,
                                      const RouteSet& routes);

// Parallel Clarke-Wright savings; always capacity-feasible.
RouteSet savings_routes(const Instance& inst);

}  // namespace cvrpcut

#endif  // CVRPCUT_RELAXATION_H_
