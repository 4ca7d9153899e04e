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

// Embedded LP/MILP engine: a bounded-variable revised simplex over an LU
// factorization of the basis (primal, with a dual phase for warm starts that
// lost primal feasibility), and a best-first branch-and-bound layer on top.
//
// Every row i is stored as  a_i x + s_i = b_i  with a logical (slack)
// variable s_i whose bounds encode the sense:
//   <=  : s_i in [0, +inf)      >=  : s_i in (-inf, 0]      =  : s_i = 0.
// Variable indices [0, num_vars) are structural, [num_vars, num_vars +
// num_rows) are the row logicals.

#ifndef CVRPCUT_LP_H_
#define CVRPCUT_LP_H_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace cvrpcut {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct LpRow {
  std::vector<int> index;
  std::vector<double> value;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

// min c^T x  s.t. rows, lo <= x <= hi.
class LinearProgram {
 public:
  LinearProgram() = default;

  int add_variable(double cost, double lo, double hi);
  // Sparse row; zero coefficients are dropped, duplicate indices summed.
  int add_row(std::span<const int> index, std::span<const double> value,
              RowSense sense, double rhs);
  // Dense row over all current variables.
  int add_dense_row(std::span<const double> coeffs, RowSense sense,
                    double rhs);

  int num_vars() const { return static_cast<int>(cost_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  double cost(int j) const { return cost_[j]; }
  double lower(int j) const { return lower_[j]; }
  double upper(int j) const { return upper_[j]; }
  const std::vector<double>& costs() const { return cost_; }
  const std::vector<double>& lowers() const { return lower_; }
  const std::vector<double>& uppers() const { return upper_; }
  const LpRow& row(int i) const { return rows_[i]; }
  const std::vector<LpRow>& rows() const { return rows_; }

  void set_bounds(int j, double lo, double hi);

  // Row activity a_i x for a full primal vector.
  double row_activity(int i, std::span<const double> x) const;

  // Plain-text fixed-format listing, for bug reports.
  void dump(std::ostream& out) const;

 private:
  std::vector<double> cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<LpRow> rows_;
};

enum class VarStatus : uint8_t { kBasic, kAtLower, kAtUpper, kFreeZero };

// Status of every structural and logical variable. A basis recorded for an
// LP with fewer rows is accepted as a warm start for the same LP with rows
// appended; the new logicals enter the basis.
struct Basis {
  int num_vars = 0;
  std::vector<VarStatus> status;
  friend bool operator==(const Basis&, const Basis&) = default;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;              // structural values
  std::vector<double> duals;          // one per row
  std::vector<double> reduced_costs;  // one per structural variable
  Basis basis;
  int64_t iterations = 0;  // simplex pivots and bound flips
  bool used_bland = false;
};

// Dual objective reconstructed from the final basis: b^T y plus reduced
// costs times the bound each nonbasic variable sits at.
double dual_objective(const LinearProgram& lp, const LpSolution& sol);

struct SimplexOptions {
  // Pivots without objective progress before switching to Bland's rule.
  // Non-positive means 5 * (rows + cols).
  int64_t bland_after = 0;
  int64_t iteration_limit = 0;  // non-positive: automatic
  int refactor_every = 100;
};

LpSolution solve_lp(const LinearProgram& lp, const Basis* warm = nullptr,
                    const SimplexOptions& opts = {});

// ---------------------------------------------------------------------------
// Mixed-integer layer.

struct MipSpec {
  LinearProgram base;
  std::vector<int> integer_vars;
  std::vector<bool> binary;  // parallel to integer_vars
};

struct MipOptions {
  // Explored-node budget; non-positive means unlimited. When exhausted the
  // best incumbent is returned with proven_optimal = false.
  int64_t node_limit = 0;
};

struct MipSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  bool proven_optimal = false;
  int64_t nodes = 0;
  double root_bound = 0.0;  // LP relaxation value at the root
};

// Best-first branch-and-bound, branching on the most fractional integer
// variable; ties in the node bound go to the deeper node. With a cutoff,
// only solutions strictly below it are searched for, and "infeasible" means
// none exists.
MipSolution solve_mip(const MipSpec& mip,
                      std::optional<double> incumbent_cutoff = std::nullopt,
                      const MipOptions& opts = {});

}  // namespace cvrpcut

#endif  // CVRPCUT_LP_H_
