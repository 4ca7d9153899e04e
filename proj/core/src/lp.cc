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

#include "cvrpcut/lp.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <memory>
#include <ostream>
#include <queue>
#include <tuple>

#include "cvrpcut/common.h"

namespace cvrpcut {

// ---------------------------------------------------------------------------
// LinearProgram

int LinearProgram::add_variable(double cost, double lo, double hi) {
  if (lo > hi) throw ValidationError("variable lower bound exceeds upper");
  cost_.push_back(cost);
  lower_.push_back(lo);
  upper_.push_back(hi);
  return num_vars() - 1;
}

int LinearProgram::add_row(std::span<const int> index,
                           std::span<const double> value, RowSense sense,
                           double rhs) {
  if (index.size() != value.size()) {
    throw ValidationError("row index/value length mismatch");
  }
  std::map<int, double> merged;
  for (size_t k = 0; k < index.size(); ++k) {
    if (index[k] < 0 || index[k] >= num_vars()) {
      throw ValidationError("row references unknown variable");
    }
    merged[index[k]] += value[k];
  }
  LpRow row;
  row.sense = sense;
  row.rhs = rhs;
  for (auto [j, v] : merged) {
    if (v != 0.0) {
      row.index.push_back(j);
      row.value.push_back(v);
    }
  }
  rows_.push_back(std::move(row));
  return num_rows() - 1;
}

int LinearProgram::add_dense_row(std::span<const double> coeffs,
                                 RowSense sense, double rhs) {
  if (static_cast<int>(coeffs.size()) != num_vars()) {
    throw ValidationError("dense row length differs from variable count");
  }
  LpRow row;
  row.sense = sense;
  row.rhs = rhs;
  for (int j = 0; j < num_vars(); ++j) {
    if (coeffs[j] != 0.0) {
      row.index.push_back(j);
      row.value.push_back(coeffs[j]);
    }
  }
  rows_.push_back(std::move(row));
  return num_rows() - 1;
}

void LinearProgram::set_bounds(int j, double lo, double hi) {
  if (lo > hi) throw ValidationError("variable lower bound exceeds upper");
  lower_[j] = lo;
  upper_[j] = hi;
}

double LinearProgram::row_activity(int i, std::span<const double> x) const {
  const LpRow& r = rows_[i];
  double s = 0.0;
  for (size_t k = 0; k < r.index.size(); ++k) s += r.value[k] * x[r.index[k]];
  return s;
}

void LinearProgram::dump(std::ostream& out) const {
  auto bound = [](double v) {
    std::ostringstream s;
    if (v == kInfinity) {
      s << "+inf";
    } else if (v == -kInfinity) {
      s << "-inf";
    } else {
      s << std::setprecision(17) << v;
    }
    return s.str();
  };
  out << "LP " << num_vars() << " VARS " << num_rows() << " ROWS\n";
  for (int j = 0; j < num_vars(); ++j) {
    out << "VAR " << std::setw(6) << j << ' ' << std::setprecision(17)
        << std::setw(24) << cost_[j] << ' ' << std::setw(24) << bound(lower_[j])
        << ' ' << std::setw(24) << bound(upper_[j]) << '\n';
  }
  for (int i = 0; i < num_rows(); ++i) {
    const LpRow& r = rows_[i];
    const char* sense = r.sense == RowSense::kLessEqual      ? "LE"
                        : r.sense == RowSense::kGreaterEqual ? "GE"
                                                             : "EQ";
    out << "ROW " << std::setw(6) << i << ' ' << sense << ' '
        << std::setprecision(17) << r.rhs << ' ' << r.index.size() << '\n';
    for (size_t k = 0; k < r.index.size(); ++k) {
      out << "  " << std::setw(6) << r.index[k] << ' ' << std::setprecision(17)
          << r.value[k] << '\n';
    }
  }
}

double dual_objective(const LinearProgram& lp, const LpSolution& sol) {
  double z = 0.0;
  for (int i = 0; i < lp.num_rows(); ++i) z += lp.row(i).rhs * sol.duals[i];
  for (int j = 0; j < lp.num_vars(); ++j) {
    switch (sol.basis.status[j]) {
      case VarStatus::kAtLower:
        z += sol.reduced_costs[j] * lp.lower(j);
        break;
      case VarStatus::kAtUpper:
        z += sol.reduced_costs[j] * lp.upper(j);
        break;
      default:
        break;
    }
  }
  return z;
}

// ---------------------------------------------------------------------------
// Revised simplex over a dense LU factorization of the basis with
// product-form updates.

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kSingularTol = 1e-11;

// P B = L U with partial pivoting (column-major, L unit lower), followed by
// eta columns for every basis change since the last factorization.
class BasisFactor {
 public:
  // `column(c, out)` writes column c of B into the zeroed dense vector out.
  template <typename ColumnFn>
  bool factor(int m, ColumnFn&& column) {
    m_ = m;
    lu_.assign(static_cast<size_t>(m) * m, 0.0);
    std::vector<double> col(m);
    for (int c = 0; c < m; ++c) {
      std::fill(col.begin(), col.end(), 0.0);
      column(c, col);
      std::copy(col.begin(), col.end(), lu_.begin() + static_cast<size_t>(c) * m);
    }
    perm_.resize(m);
    for (int i = 0; i < m; ++i) perm_[i] = i;
    etas_.clear();
    std::vector<int> rows;
    for (int k = 0; k < m; ++k) {
      double* ck = &lu_[static_cast<size_t>(k) * m];
      int p = k;
      double best = std::abs(ck[k]);
      for (int i = k + 1; i < m; ++i) {
        if (std::abs(ck[i]) > best) {
          best = std::abs(ck[i]);
          p = i;
        }
      }
      if (best < kSingularTol) return false;
      if (p != k) {
        for (int c = 0; c < m; ++c) {
          std::swap(lu_[static_cast<size_t>(c) * m + k],
                    lu_[static_cast<size_t>(c) * m + p]);
        }
        std::swap(perm_[k], perm_[p]);
      }
      const double inv = 1.0 / ck[k];
      rows.clear();
      for (int i = k + 1; i < m; ++i) {
        if (ck[i] != 0.0) {
          ck[i] *= inv;
          rows.push_back(i);
        }
      }
      if (rows.empty()) continue;
      for (int c = k + 1; c < m; ++c) {
        double* cc = &lu_[static_cast<size_t>(c) * m];
        const double f = cc[k];
        if (f == 0.0) continue;
        for (int i : rows) cc[i] -= ck[i] * f;
      }
    }
    compress();
    return true;
  }

  int num_updates() const { return static_cast<int>(etas_.size()); }

  // Solves B x = v in place.
  void ftran(std::vector<double>& v) const {
    const int m = m_;
    work_.resize(m);
    for (int i = 0; i < m; ++i) work_[i] = v[perm_[i]];
    for (int k = 0; k < m; ++k) {
      const double xk = work_[k];
      if (xk == 0.0) continue;
      for (int p = l_start_[k]; p < l_start_[k + 1]; ++p) {
        work_[l_row_[p]] -= l_val_[p] * xk;
      }
    }
    for (int k = m - 1; k >= 0; --k) {
      if (work_[k] == 0.0) continue;
      const double xk = work_[k] / diag_[k];
      work_[k] = xk;
      for (int p = u_start_[k]; p < u_start_[k + 1]; ++p) {
        work_[u_row_[p]] -= u_val_[p] * xk;
      }
    }
    for (const Eta& e : etas_) {
      const double xr = work_[e.row] / e.pivot;
      work_[e.row] = xr;
      if (xr == 0.0) continue;
      for (size_t t = 0; t < e.index.size(); ++t) {
        work_[e.index[t]] -= e.value[t] * xr;
      }
    }
    v.swap(work_);
  }

  // Solves y^T B = v^T in place.
  void btran(std::vector<double>& v) const {
    const int m = m_;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = v[it->row];
      for (size_t t = 0; t < it->index.size(); ++t) {
        s -= it->value[t] * v[it->index[t]];
      }
      v[it->row] = s / it->pivot;
    }
    // U^T w = v, then L^T z = w, then y = P^T z.
    for (int k = 0; k < m; ++k) {
      double s = v[k];
      for (int p = u_start_[k]; p < u_start_[k + 1]; ++p) {
        s -= u_val_[p] * v[u_row_[p]];
      }
      v[k] = s / diag_[k];
    }
    for (int k = m - 1; k >= 0; --k) {
      double s = v[k];
      for (int p = l_start_[k]; p < l_start_[k + 1]; ++p) {
        s -= l_val_[p] * v[l_row_[p]];
      }
      v[k] = s;
    }
    work_.resize(m);
    for (int i = 0; i < m; ++i) work_[perm_[i]] = v[i];
    v.swap(work_);
  }

  // Column r of the basis is replaced; alpha = B^-1 a_entering.
  void update(int r, const std::vector<double>& alpha) {
    Eta e;
    e.row = r;
    e.pivot = alpha[r];
    for (int i = 0; i < m_; ++i) {
      if (i != r && alpha[i] != 0.0) {
        e.index.push_back(i);
        e.value.push_back(alpha[i]);
      }
    }
    etas_.push_back(std::move(e));
  }

 private:
  struct Eta {
    int row = 0;
    double pivot = 1.0;
    std::vector<int> index;
    std::vector<double> value;
  };

  // Splits the dense factors into sparse columns of L and U plus the
  // diagonal of U.
  void compress() {
    const int m = m_;
    l_start_.assign(m + 1, 0);
    u_start_.assign(m + 1, 0);
    l_row_.clear();
    l_val_.clear();
    u_row_.clear();
    u_val_.clear();
    diag_.resize(m);
    for (int k = 0; k < m; ++k) {
      const double* ck = &lu_[static_cast<size_t>(k) * m];
      for (int i = 0; i < k; ++i) {
        if (ck[i] != 0.0) {
          u_row_.push_back(i);
          u_val_.push_back(ck[i]);
        }
      }
      diag_[k] = ck[k];
      for (int i = k + 1; i < m; ++i) {
        if (ck[i] != 0.0) {
          l_row_.push_back(i);
          l_val_.push_back(ck[i]);
        }
      }
      l_start_[k + 1] = static_cast<int>(l_row_.size());
      u_start_[k + 1] = static_cast<int>(u_row_.size());
    }
  }

  int m_ = 0;
  std::vector<double> lu_;
  std::vector<int> l_start_, l_row_, u_start_, u_row_;
  std::vector<double> l_val_, u_val_, diag_;
  std::vector<int> perm_;
  std::vector<Eta> etas_;
  mutable std::vector<double> work_;
};

class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SimplexOptions& opts)
      : opts_(opts), n_(lp.num_vars()), m_(lp.num_rows()), total_(n_ + m_) {
    // Column-compressed structural matrix.
    std::vector<int> count(n_ + 1, 0);
    for (const LpRow& r : lp.rows()) {
      for (int j : r.index) ++count[j + 1];
    }
    col_start_.assign(n_ + 1, 0);
    for (int j = 0; j < n_; ++j) col_start_[j + 1] = col_start_[j] + count[j + 1];
    col_row_.resize(col_start_[n_]);
    col_val_.resize(col_start_[n_]);
    std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
    for (int i = 0; i < m_; ++i) {
      const LpRow& r = lp.row(i);
      for (size_t k = 0; k < r.index.size(); ++k) {
        const int p = fill[r.index[k]]++;
        col_row_[p] = i;
        col_val_[p] = r.value[k];
      }
    }
    b_.resize(m_);
    lo_.resize(total_);
    hi_.resize(total_);
    cost_.assign(total_, 0.0);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lp.lower(j);
      hi_[j] = lp.upper(j);
      cost_[j] = lp.cost(j);
    }
    for (int i = 0; i < m_; ++i) {
      const LpRow& r = lp.row(i);
      b_[i] = r.rhs;
      switch (r.sense) {
        case RowSense::kLessEqual:
          lo_[n_ + i] = 0.0;
          hi_[n_ + i] = kInfinity;
          break;
        case RowSense::kGreaterEqual:
          lo_[n_ + i] = -kInfinity;
          hi_[n_ + i] = 0.0;
          break;
        case RowSense::kEqual:
          lo_[n_ + i] = 0.0;
          hi_[n_ + i] = 0.0;
          break;
      }
    }
    x_.assign(total_, 0.0);
    status_.assign(total_, VarStatus::kAtLower);
    head_.assign(m_, -1);
    pos_.assign(total_, -1);
  }

  void set_structural_bounds(int j, double lo, double hi) {
    lo_[j] = lo;
    hi_[j] = hi;
  }

  LpSolution solve(const Basis* warm);

 private:
  // Places nonbasic j at a bound consistent with its status.
  void place_nonbasic(int j) {
    VarStatus& s = status_[j];
    if (s == VarStatus::kAtLower && !std::isfinite(lo_[j])) {
      s = std::isfinite(hi_[j]) ? VarStatus::kAtUpper : VarStatus::kFreeZero;
    } else if (s == VarStatus::kAtUpper && !std::isfinite(hi_[j])) {
      s = std::isfinite(lo_[j]) ? VarStatus::kAtLower : VarStatus::kFreeZero;
    } else if (s == VarStatus::kFreeZero &&
               (std::isfinite(lo_[j]) || std::isfinite(hi_[j]))) {
      s = std::isfinite(lo_[j]) ? VarStatus::kAtLower : VarStatus::kAtUpper;
    }
    switch (s) {
      case VarStatus::kAtLower:
        x_[j] = lo_[j];
        break;
      case VarStatus::kAtUpper:
        x_[j] = hi_[j];
        break;
      default:
        x_[j] = 0.0;
        break;
    }
  }

  void slack_basis() {
    for (int j = 0; j < n_; ++j) {
      status_[j] = VarStatus::kAtLower;
      pos_[j] = -1;
    }
    for (int i = 0; i < m_; ++i) {
      status_[n_ + i] = VarStatus::kBasic;
      head_[i] = n_ + i;
      pos_[n_ + i] = i;
    }
  }

  // True when `warm` has exactly the basic set of the current factorization;
  // then only the nonbasic statuses are copied.
  bool matches_factor(const Basis& warm) {
    if (!factor_valid_ || warm.num_vars != n_ ||
        static_cast<int>(warm.status.size()) != total_) {
      return false;
    }
    for (int j = 0; j < total_; ++j) {
      if ((warm.status[j] == VarStatus::kBasic) != (pos_[j] >= 0)) return false;
    }
    for (int j = 0; j < total_; ++j) {
      if (pos_[j] < 0) status_[j] = warm.status[j];
    }
    return true;
  }

  bool load_basis(const Basis& warm) {
    if (warm.num_vars != n_) return false;
    const int old_rows = static_cast<int>(warm.status.size()) - n_;
    if (old_rows < 0 || old_rows > m_) return false;
    for (int j = 0; j < n_ + old_rows; ++j) status_[j] = warm.status[j];
    for (int i = old_rows; i < m_; ++i) status_[n_ + i] = VarStatus::kBasic;
    int row = 0;
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::kBasic) {
        if (row >= m_) return false;
        head_[row] = j;
        pos_[j] = row++;
      } else {
        pos_[j] = -1;
      }
    }
    return row == m_;
  }

  void scatter_column(int j, std::vector<double>& out) const {
    if (j < n_) {
      for (int p = col_start_[j]; p < col_start_[j + 1]; ++p) {
        out[col_row_[p]] = col_val_[p];
      }
    } else {
      out[j - n_] = 1.0;
    }
  }

  bool refactor() {
    factor_valid_ = factor_.factor(
        m_, [&](int c, std::vector<double>& out) { scatter_column(head_[c], out); });
    return factor_valid_;
  }

  void compute_basic_values() {
    std::vector<double> r(b_);
    for (int j = 0; j < n_; ++j) {
      if (status_[j] == VarStatus::kBasic || x_[j] == 0.0) continue;
      for (int p = col_start_[j]; p < col_start_[j + 1]; ++p) {
        r[col_row_[p]] -= col_val_[p] * x_[j];
      }
    }
    for (int i = 0; i < m_; ++i) {
      const int j = n_ + i;
      if (status_[j] != VarStatus::kBasic && x_[j] != 0.0) r[i] -= x_[j];
    }
    factor_.ftran(r);
    for (int i = 0; i < m_; ++i) x_[head_[i]] = r[i];
  }

  double infeasibility(int j) const {
    if (x_[j] < lo_[j] - tol::kFeasibility) return lo_[j] - x_[j];
    if (x_[j] > hi_[j] + tol::kFeasibility) return x_[j] - hi_[j];
    return 0.0;
  }

  double total_infeasibility() const {
    double s = 0.0;
    for (int i = 0; i < m_; ++i) s += infeasibility(head_[i]);
    return s;
  }

  // Largest of the primal row residuals |Ax + s - b| and the basic dual
  // residuals |cb_i - y^T a_head[i]|.
  double residual(const std::vector<double>& cb,
                  const std::vector<double>& y) const {
    std::vector<double> r(m_);
    for (int i = 0; i < m_; ++i) r[i] = x_[n_ + i] - b_[i];
    for (int j = 0; j < n_; ++j) {
      if (x_[j] == 0.0) continue;
      for (int p = col_start_[j]; p < col_start_[j + 1]; ++p) {
        r[col_row_[p]] += col_val_[p] * x_[j];
      }
    }
    double worst = 0.0;
    for (int i = 0; i < m_; ++i) {
      worst = std::max(worst, std::abs(r[i]) / (1.0 + std::abs(b_[i])));
    }
    for (int i = 0; i < m_; ++i) {
      worst = std::max(worst, std::abs(cb[i] - column_dot(head_[i], y)) /
                                  (1.0 + std::abs(cb[i])));
    }
    return worst;
  }

  double column_dot(int j, const std::vector<double>& y) const {
    if (j >= n_) return y[j - n_];
    double s = 0.0;
    for (int p = col_start_[j]; p < col_start_[j + 1]; ++p) {
      s += y[col_row_[p]] * col_val_[p];
    }
    return s;
  }

  // alpha = B^-1 a_j
  void ftran_column(int j, std::vector<double>& alpha) const {
    std::fill(alpha.begin(), alpha.end(), 0.0);
    scatter_column(j, alpha);
    factor_.ftran(alpha);
  }

  // y^T = c_B^T B^-1 and reduced costs for all variables.
  void price(const std::vector<double>& cb, std::vector<double>& y,
             std::vector<double>& d, bool phase_one) const {
    y = cb;
    factor_.btran(y);
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::kBasic) {
        d[j] = 0.0;
        continue;
      }
      const double c = phase_one ? 0.0 : cost_[j];
      d[j] = c - column_dot(j, y);
    }
  }

  // Returns +1/-1 for the improving direction, 0 if j is not eligible.
  int eligible(int j, double dj) const {
    if (status_[j] == VarStatus::kBasic) return 0;
    if (lo_[j] == hi_[j]) return 0;
    switch (status_[j]) {
      case VarStatus::kAtLower:
        return dj < -tol::kOptimality ? 1 : 0;
      case VarStatus::kAtUpper:
        return dj > tol::kOptimality ? -1 : 0;
      case VarStatus::kFreeZero:
        if (dj < -tol::kOptimality) return 1;
        if (dj > tol::kOptimality) return -1;
        return 0;
      default:
        return 0;
    }
  }

  bool dual_feasible(const std::vector<double>& d) const {
    for (int j = 0; j < total_; ++j) {
      if (eligible(j, d[j]) != 0) return false;
    }
    return true;
  }

  // Basis change: `q` enters at position `r`, the leaving variable goes to
  // `leave_value` (one of its bounds).
  void exchange(int r, int q, const std::vector<double>& alpha, double theta,
                double leave_value) {
    for (int i = 0; i < m_; ++i) x_[head_[i]] -= theta * alpha[i];
    const double xq = x_[q] + theta;
    const int out = head_[r];
    x_[out] = leave_value;
    status_[out] = leave_value == lo_[out] ? VarStatus::kAtLower
                                           : VarStatus::kAtUpper;
    if (lo_[out] == hi_[out]) status_[out] = VarStatus::kAtLower;
    pos_[out] = -1;
    head_[r] = q;
    pos_[q] = r;
    status_[q] = VarStatus::kBasic;
    x_[q] = xq;
    factor_.update(r, alpha);
    if (factor_.num_updates() >= opts_.refactor_every) {
      if (!refactor()) throw InvariantViolation("basis became singular");
      compute_basic_values();
    }
  }

  // Dual simplex from a dual feasible basis. Returns false when it gives up
  // (stall or lost dual feasibility) and leaves the rest to the primal
  // method; sets *infeasible when a row proves primal infeasibility.
  bool dual_phase(int64_t& iter, int64_t limit, bool* infeasible);

  SimplexOptions opts_;
  int n_, m_, total_;
  std::vector<int> col_start_, col_row_;
  std::vector<double> col_val_;
  std::vector<double> b_, lo_, hi_, cost_;
  std::vector<double> x_;
  std::vector<VarStatus> status_;
  std::vector<int> head_, pos_;
  BasisFactor factor_;
  bool factor_valid_ = false;
};

bool Simplex::dual_phase(int64_t& iter, int64_t limit, bool* infeasible) {
  std::vector<double> cb(m_), y(m_), d(total_), rho(m_), alpha(m_);
  const int64_t budget = iter + 2LL * (m_ + n_) + 100;
  while (iter < limit && iter < budget) {
    // Leaving row: largest bound violation.
    int r = -1;
    double worst = tol::kFeasibility;
    for (int i = 0; i < m_; ++i) {
      const double v = infeasibility(head_[i]);
      if (v > worst) {
        worst = v;
        r = i;
      }
    }
    if (r < 0) return true;
    const int out = head_[r];
    const bool below = x_[out] < lo_[out];
    const double target = below ? lo_[out] : hi_[out];

    for (int i = 0; i < m_; ++i) cb[i] = cost_[head_[i]];
    price(cb, y, d, false);
    if (!dual_feasible(d)) return false;
    std::fill(rho.begin(), rho.end(), 0.0);
    rho[r] = 1.0;
    factor_.btran(rho);

    // x_out moves by -alpha_rj * delta_j; it must move toward `target`.
    const double s = below ? 1.0 : -1.0;
    auto candidate = [&](int j, double arj, int& dir) {
      if (status_[j] == VarStatus::kBasic || lo_[j] == hi_[j]) return false;
      if (std::abs(arj) <= kPivotTol) return false;
      switch (status_[j]) {
        case VarStatus::kAtLower:
          dir = 1;
          break;
        case VarStatus::kAtUpper:
          dir = -1;
          break;
        default:
          dir = -arj * s > 0.0 ? 1 : -1;
          break;
      }
      return -arj * dir * s > 0.0;
    };
    std::vector<double> arow(total_, 0.0);
    double theta_relaxed = kInfinity;
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::kBasic) continue;
      arow[j] = column_dot(j, rho);
      int dir;
      if (!candidate(j, arow[j], dir)) continue;
      theta_relaxed = std::min(
          theta_relaxed, (std::abs(d[j]) + tol::kOptimality) / std::abs(arow[j]));
    }
    if (theta_relaxed == kInfinity) {
      *infeasible = true;
      return true;
    }
    int q = -1;
    double best_alpha = 0.0;
    for (int j = 0; j < total_; ++j) {
      int dir;
      if (status_[j] == VarStatus::kBasic || !candidate(j, arow[j], dir)) {
        continue;
      }
      if (std::abs(d[j]) / std::abs(arow[j]) > theta_relaxed) continue;
      if (std::abs(arow[j]) > best_alpha) {
        best_alpha = std::abs(arow[j]);
        q = j;
      }
    }
    ftran_column(q, alpha);
    if (std::abs(alpha[r]) <= kPivotTol) return false;
    const double theta = (x_[out] - target) / alpha[r];
    ++iter;
    exchange(r, q, alpha, theta, target);
  }
  return false;
}

LpSolution Simplex::solve(const Basis* warm) {
  LpSolution sol;
  const bool reuse = warm && matches_factor(*warm);
  if (!reuse && !(warm && load_basis(*warm))) slack_basis();
  for (int j = 0; j < total_; ++j) {
    if (status_[j] != VarStatus::kBasic) place_nonbasic(j);
  }
  if (!reuse && !refactor()) {
    slack_basis();
    for (int j = 0; j < total_; ++j) {
      if (status_[j] != VarStatus::kBasic) place_nonbasic(j);
    }
    if (!refactor()) throw InvariantViolation("slack basis is singular");
  }
  compute_basic_values();

  const int64_t bland_after =
      opts_.bland_after > 0 ? opts_.bland_after : 5LL * (m_ + n_);
  const int64_t limit = opts_.iteration_limit > 0
                            ? opts_.iteration_limit
                            : 200LL * (m_ + n_) + 20000;

  std::vector<double> cb(m_), y(m_), d(total_), alpha(m_);
  int64_t iter = 0;

  if (warm && total_infeasibility() > 0.0) {
    bool infeasible = false;
    if (dual_phase(iter, limit, &infeasible) && infeasible) {
      sol.status = LpStatus::kInfeasible;
      sol.iterations = iter;
      sol.x.assign(x_.begin(), x_.begin() + n_);
      sol.basis.num_vars = n_;
      sol.basis.status = status_;
      for (int j = 0; j < n_; ++j) sol.objective += cost_[j] * x_[j];
      return sol;
    }
  }

  bool phase_one = total_infeasibility() > 0.0;
  bool bland = false;
  int64_t stall = 0;
  double best_obj = kInfinity;
  bool refactored_for_check = false;

  while (true) {
    if (iter >= limit) {
      sol.status = LpStatus::kIterationLimit;
      break;
    }
    if (phase_one && total_infeasibility() == 0.0) {
      phase_one = false;
      best_obj = kInfinity;
      stall = 0;
    }
    for (int i = 0; i < m_; ++i) {
      const int j = head_[i];
      if (phase_one) {
        if (x_[j] < lo_[j] - tol::kFeasibility) {
          cb[i] = -1.0;
        } else if (x_[j] > hi_[j] + tol::kFeasibility) {
          cb[i] = 1.0;
        } else {
          cb[i] = 0.0;
        }
      } else {
        cb[i] = cost_[j];
      }
    }
    price(cb, y, d, phase_one);

    int q = -1;
    int dir = 0;
    double best = 0.0;
    for (int j = 0; j < total_; ++j) {
      const int e = eligible(j, d[j]);
      if (e == 0) continue;
      if (bland) {
        q = j;
        dir = e;
        break;
      }
      if (std::abs(d[j]) > best) {
        best = std::abs(d[j]);
        q = j;
        dir = e;
      }
    }

    if (q < 0) {
      // Confirm on a fresh factorization before declaring termination when
      // the updated factors have drifted.
      if (!refactored_for_check && factor_.num_updates() > 0 &&
          residual(cb, y) > 1e-9) {
        refactored_for_check = true;
        if (!refactor()) throw InvariantViolation("basis became singular");
        compute_basic_values();
        phase_one = total_infeasibility() > 0.0;
        continue;
      }
      sol.status = phase_one ? LpStatus::kInfeasible : LpStatus::kOptimal;
      break;
    }
    refactored_for_check = false;

    ftran_column(q, alpha);

    // Harris-style two-pass ratio test.
    double theta_relaxed = kInfinity;
    for (int i = 0; i < m_; ++i) {
      if (std::abs(alpha[i]) <= kPivotTol) continue;
      const double rate = -dir * alpha[i];
      const int j = head_[i];
      double bound;
      if (rate < 0.0) {
        if (phase_one && x_[j] > hi_[j] + tol::kFeasibility) {
          bound = hi_[j];
        } else if (x_[j] >= lo_[j] - tol::kFeasibility &&
                   std::isfinite(lo_[j])) {
          bound = lo_[j];
        } else {
          continue;
        }
        theta_relaxed = std::min(
            theta_relaxed, (x_[j] - bound + tol::kFeasibility) / -rate);
      } else {
        if (phase_one && x_[j] < lo_[j] - tol::kFeasibility) {
          bound = lo_[j];
        } else if (x_[j] <= hi_[j] + tol::kFeasibility &&
                   std::isfinite(hi_[j])) {
          bound = hi_[j];
        } else {
          continue;
        }
        theta_relaxed = std::min(
            theta_relaxed, (bound - x_[j] + tol::kFeasibility) / rate);
      }
    }
    int leave = -1;
    double leave_bound = 0.0;
    double step = kInfinity;
    double best_alpha = 0.0;
    int best_index = total_;
    for (int i = 0; i < m_; ++i) {
      if (std::abs(alpha[i]) <= kPivotTol) continue;
      const double rate = -dir * alpha[i];
      const int j = head_[i];
      double bound, t;
      if (rate < 0.0) {
        if (phase_one && x_[j] > hi_[j] + tol::kFeasibility) {
          bound = hi_[j];
        } else if (x_[j] >= lo_[j] - tol::kFeasibility &&
                   std::isfinite(lo_[j])) {
          bound = lo_[j];
        } else {
          continue;
        }
        t = (x_[j] - bound) / -rate;
      } else {
        if (phase_one && x_[j] < lo_[j] - tol::kFeasibility) {
          bound = lo_[j];
        } else if (x_[j] <= hi_[j] + tol::kFeasibility &&
                   std::isfinite(hi_[j])) {
          bound = hi_[j];
        } else {
          continue;
        }
        t = (bound - x_[j]) / rate;
      }
      if (t > theta_relaxed) continue;
      const bool better = bland ? j < best_index
                                : std::abs(alpha[i]) > best_alpha;
      if (better) {
        best_alpha = std::abs(alpha[i]);
        best_index = j;
        leave = i;
        leave_bound = bound;
        step = std::max(0.0, t);
      }
    }

    const double flip = hi_[q] - lo_[q];
    const bool do_flip = std::isfinite(flip) && flip <= step;
    if (!do_flip && leave < 0) {
      if (phase_one) {
        // Cannot happen with exact arithmetic; treat as numerical trouble.
        if (!refactor()) throw InvariantViolation("basis became singular");
        compute_basic_values();
        ++iter;
        continue;
      }
      sol.status = LpStatus::kUnbounded;
      break;
    }

    ++iter;
    if (do_flip) {
      step = flip;
      for (int i = 0; i < m_; ++i) x_[head_[i]] -= dir * step * alpha[i];
      if (status_[q] == VarStatus::kAtLower) {
        status_[q] = VarStatus::kAtUpper;
        x_[q] = hi_[q];
      } else {
        status_[q] = VarStatus::kAtLower;
        x_[q] = lo_[q];
      }
    } else {
      exchange(leave, q, alpha, dir * step, leave_bound);
    }

    // Degeneracy watchdog.
    double obj = 0.0;
    if (phase_one) {
      obj = total_infeasibility();
    } else {
      for (int j = 0; j < total_; ++j) obj += cost_[j] * x_[j];
    }
    if (obj < best_obj - 1e-12 * (1.0 + std::abs(best_obj))) {
      best_obj = obj;
      stall = 0;
    } else if (++stall >= bland_after) {
      bland = true;
      sol.used_bland = true;
    }
  }

  sol.iterations = iter;
  sol.x.assign(x_.begin(), x_.begin() + n_);
  sol.objective = 0.0;
  for (int j = 0; j < n_; ++j) sol.objective += cost_[j] * x_[j];
  sol.basis.num_vars = n_;
  sol.basis.status = status_;
  if (sol.status == LpStatus::kOptimal) {
    for (int i = 0; i < m_; ++i) cb[i] = cost_[head_[i]];
    price(cb, y, d, false);
    sol.duals = y;
    sol.reduced_costs.assign(d.begin(), d.begin() + n_);
  }
  return sol;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const Basis* warm,
                    const SimplexOptions& opts) {
  Simplex simplex(lp, opts);
  return simplex.solve(warm);
}

// ---------------------------------------------------------------------------
// Branch and bound

namespace {

struct BbNode {
  std::vector<std::tuple<int, double, double>> bounds;  // (var, lo, hi)
  double parent_bound = -kInfinity;
  int depth = 0;
  int64_t id = 0;
  std::shared_ptr<const Basis> basis;
};

struct NodeOrder {
  // priority_queue pops the "largest": invert for best-first.
  bool operator()(const BbNode& a, const BbNode& b) const {
    if (a.parent_bound != b.parent_bound) return a.parent_bound > b.parent_bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

}  // namespace

MipSolution solve_mip(const MipSpec& mip, std::optional<double> cutoff,
                      const MipOptions& opts) {
  const LinearProgram& lp = mip.base;
  for (int j : mip.integer_vars) {
    if (j < 0 || j >= lp.num_vars()) {
      throw ValidationError("integer variable index out of range");
    }
    if (!std::isfinite(lp.lower(j)) || !std::isfinite(lp.upper(j))) {
      throw ValidationError("integer variables must be bounded");
    }
  }

  MipSolution result;
  double incumbent = cutoff.value_or(kInfinity);
  bool have_incumbent = false;

  Simplex simplex(lp, {});
  std::priority_queue<BbNode, std::vector<BbNode>, NodeOrder> open;
  int64_t next_id = 0;
  open.push(BbNode{{}, -kInfinity, 0, next_id++, nullptr});
  bool exhausted = true;

  while (!open.empty()) {
    BbNode node = open.top();
    open.pop();
    if (node.parent_bound >= incumbent - 1e-9) continue;
    if (opts.node_limit > 0 && result.nodes >= opts.node_limit) {
      exhausted = false;
      break;
    }
    ++result.nodes;

    for (int j = 0; j < lp.num_vars(); ++j) {
      simplex.set_structural_bounds(j, lp.lower(j), lp.upper(j));
    }
    for (auto [j, lo, hi] : node.bounds) simplex.set_structural_bounds(j, lo, hi);
    LpSolution rel = simplex.solve(node.basis.get());
    if (node.id == 0) {
      if (rel.status == LpStatus::kUnbounded) {
        result.status = LpStatus::kUnbounded;
        return result;
      }
      result.root_bound = rel.objective;
    }
    if (rel.status == LpStatus::kIterationLimit) {
      throw InvariantViolation("simplex iteration limit in branch-and-bound");
    }
    if (rel.status != LpStatus::kOptimal) continue;
    if (rel.objective >= incumbent - 1e-9) continue;

    int branch_var = -1;
    double best_frac = tol::kIntegrality;
    for (int j : mip.integer_vars) {
      const double v = rel.x[j];
      const double f = v - std::floor(v);
      const double score = std::min(f, 1.0 - f);
      if (score > best_frac) {
        best_frac = score;
        branch_var = j;
      }
    }
    if (branch_var < 0) {
      incumbent = rel.objective;
      have_incumbent = true;
      result.objective = rel.objective;
      result.x = rel.x;
      for (int j : mip.integer_vars) result.x[j] = std::round(result.x[j]);
      continue;
    }

    auto basis = std::make_shared<const Basis>(std::move(rel.basis));
    const double v = rel.x[branch_var];
    double lo = lp.lower(branch_var), hi = lp.upper(branch_var);
    for (auto [j, l, h] : node.bounds) {
      if (j == branch_var) {
        lo = l;
        hi = h;
      }
    }
    BbNode down{node.bounds, rel.objective, node.depth + 1, next_id++, basis};
    down.bounds.emplace_back(branch_var, lo, std::floor(v));
    BbNode up{std::move(node.bounds), rel.objective, node.depth + 1, next_id++,
              basis};
    up.bounds.emplace_back(branch_var, std::ceil(v), hi);
    open.push(std::move(down));
    open.push(std::move(up));
  }

  result.proven_optimal = exhausted;
  if (have_incumbent) {
    result.status = LpStatus::kOptimal;
  } else {
    result.status = exhausted ? LpStatus::kInfeasible : LpStatus::kIterationLimit;
  }
  return result;
}

}  // namespace cvrpcut
