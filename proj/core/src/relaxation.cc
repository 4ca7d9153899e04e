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

#include "cvrpcut/relaxation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "cvrpcut/common.h"

namespace cvrpcut {

FractionalSolution::FractionalSolution(int n, std::vector<double> values,
                                       double objective)
    : n_(n), values_(std::move(values)), objective_(objective) {
  if (static_cast<int>(values_.size()) != num_edges(n)) {
    throw ValidationError("edge value vector has wrong length");
  }
}

FractionalSolution FractionalSolution::from_edges(
    int n, std::span<const WeightedEdge> edges, double objective) {
  std::vector<double> values(num_edges(n), 0.0);
  for (const WeightedEdge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v) {
      throw ValidationError("edge (" + std::to_string(e.u) + ", " +
                            std::to_string(e.v) + ") is not valid for n = " +
                            std::to_string(n));
    }
    values[edge_index(n, e.u, e.v)] += e.x;
  }
  return FractionalSolution(n, std::move(values), objective);
}

std::vector<WeightedEdge> FractionalSolution::support(double threshold) const {
  std::vector<WeightedEdge> out;
  int k = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j, ++k) {
      if (values_[k] > threshold) out.push_back({i, j, values_[k]});
    }
  }
  return out;
}

double FractionalSolution::degree(int i) const {
  double s = 0.0;
  for (int j = 0; j < n_; ++j) {
    if (j != i) s += value(i, j);
  }
  return s;
}

const char* to_string(CutKind kind) {
  return kind == CutKind::kRci ? "RCI" : "FCI";
}

const char* to_string(CutSource source) {
  switch (source) {
    case CutSource::kExact:
      return "exact";
    case CutSource::kCoarsen:
      return "coarsen";
    case CutSource::kGraphChipRci:
      return "graphchip-rci";
    case CutSource::kGraphChipFci:
      return "graphchip-fci";
  }
  return "?";
}

const char* to_string(BinBoundTag tag) {
  return tag == BinBoundTag::kExact ? "exact" : "lower-bound";
}

double boundary_value(std::span<const WeightedEdge> edges,
                      std::span<const char> in_set) {
  double s = 0.0;
  for (const WeightedEdge& e : edges) {
    if (in_set[e.u] != in_set[e.v]) s += e.x;
  }
  return s;
}

double boundary_value(std::span<const WeightedEdge> edges, int n,
                      std::span<const int> vertices) {
  std::vector<char> mask(n, 0);
  for (int v : vertices) mask[v] = 1;
  return boundary_value(edges, mask);
}

namespace {

// label[v] = member index for FCI members, -1 outside the frame; in_frame
// marks H.
struct FciLabels {
  std::vector<int> label;
  std::vector<char> in_frame;
};

FciLabels fci_labels(int n, const Cut& cut) {
  FciLabels l{std::vector<int>(n, -1), std::vector<char>(n, 0)};
  for (int v : cut.frame) l.in_frame[v] = 1;
  for (size_t k = 0; k < cut.members.size(); ++k) {
    for (int v : cut.members[k]) l.label[v] = static_cast<int>(k);
  }
  return l;
}

int fci_edge_coefficient(const FciLabels& l, int i, int j) {
  int c = l.in_frame[i] != l.in_frame[j] ? 1 : 0;
  if (l.label[i] != l.label[j]) {
    if (l.label[i] >= 0) ++c;
    if (l.label[j] >= 0) ++c;
  }
  return c;
}

}  // namespace

double cut_lhs(const FractionalSolution& sol, const Cut& cut) {
  const int n = sol.n();
  const auto edges = sol.support(0.0);
  if (cut.kind == CutKind::kRci) {
    return boundary_value(edges, n, cut.subset);
  }
  const FciLabels l = fci_labels(n, cut);
  double s = 0.0;
  for (const WeightedEdge& e : edges) {
    s += fci_edge_coefficient(l, e.u, e.v) * e.x;
  }
  return s;
}

std::vector<double> cut_coefficients(int n, const Cut& cut) {
  std::vector<double> coef(num_edges(n), 0.0);
  if (cut.kind == CutKind::kRci) {
    std::vector<char> mask(n, 0);
    for (int v : cut.subset) mask[v] = 1;
    int k = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j, ++k) {
        if (mask[i] != mask[j]) coef[k] = 1.0;
      }
    }
    return coef;
  }
  const FciLabels l = fci_labels(n, cut);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++k) coef[k] = fci_edge_coefficient(l, i, j);
  }
  return coef;
}

std::vector<int> cut_key(const Cut& cut) {
  std::vector<int> key;
  if (cut.kind == CutKind::kRci) {
    key.push_back(0);
    std::vector<int> s = cut.subset;
    std::sort(s.begin(), s.end());
    key.insert(key.end(), s.begin(), s.end());
    return key;
  }
  key.push_back(1);
  std::vector<int> h = cut.frame;
  std::sort(h.begin(), h.end());
  key.insert(key.end(), h.begin(), h.end());
  std::vector<std::vector<int>> parts = cut.members;
  for (auto& p : parts) std::sort(p.begin(), p.end());
  std::sort(parts.begin(), parts.end());
  for (const auto& p : parts) {
    key.push_back(-1);
    key.insert(key.end(), p.begin(), p.end());
  }
  return key;
}

LinearProgram build_relaxation(const Instance& inst) {
  const int n = inst.n();
  LinearProgram lp;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      lp.add_variable(static_cast<double>(inst.cost(i, j)), 0.0,
                      i == 0 ? 2.0 : 1.0);
    }
  }
  std::vector<int> idx;
  std::vector<double> val;
  for (int i = 1; i < n; ++i) {
    idx.clear();
    val.clear();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      idx.push_back(edge_index(n, i, j));
      val.push_back(1.0);
    }
    lp.add_row(idx, val, RowSense::kEqual, 2.0);
  }
  return lp;
}

std::optional<int> add_cut(LinearProgram& lp, CutPool& pool, const Cut& cut,
                           int n) {
  auto key = cut_key(cut);
  if (pool.keys_.count(key) > 0) return std::nullopt;
  const std::vector<double> coef = cut_coefficients(n, cut);
  std::vector<int> idx;
  std::vector<double> val;
  for (size_t k = 0; k < coef.size(); ++k) {
    if (coef[k] != 0.0) {
      idx.push_back(static_cast<int>(k));
      val.push_back(coef[k]);
    }
  }
  const int row = lp.add_row(idx, val, RowSense::kGreaterEqual,
                             static_cast<double>(cut.rhs));
  pool.keys_.insert(std::move(key));
  pool.cuts_.push_back(cut);
  pool.rows_.push_back(row);
  return row;
}

double gap(double ub, double lb) {
  if (!(ub > 0.0)) throw ValidationError("gap needs a positive upper bound");
  return (ub - lb) / ub * 100.0;
}

FractionalSolution to_fractional(const Instance& inst, const LpSolution& sol) {
  std::vector<double> values(sol.x.begin(), sol.x.begin() + num_edges(inst.n()));
  for (double& v : values) {
    if (std::abs(v) < 1e-12) v = 0.0;
  }
  return FractionalSolution(inst.n(), std::move(values), sol.objective);
}

int64_t route_set_cost(const Instance& inst, const RouteSet& routes) {
  int64_t c = 0;
  for (const auto& r : routes) {
    if (r.empty()) continue;
    c += inst.cost(0, r.front());
    for (size_t k = 1; k < r.size(); ++k) c += inst.cost(r[k - 1], r[k]);
    c += inst.cost(r.back(), 0);
  }
  return c;
}

FractionalSolution route_set_solution(const Instance& inst,
                                      const RouteSet& routes) {
  const int n = inst.n();
  std::vector<double> values(num_edges(n), 0.0);
  for (const auto& r : routes) {
    if (r.empty()) continue;
    values[edge_index(n, 0, r.front())] += 1.0;
    for (size_t k = 1; k < r.size(); ++k) {
      values[edge_index(n, r[k - 1], r[k])] += 1.0;
    }
    values[edge_index(n, r.back(), 0)] += 1.0;
  }
  return FractionalSolution(n, std::move(values),
                            static_cast<double>(route_set_cost(inst, routes)));
}

RouteSet savings_routes(const Instance& inst) {
  const int n = inst.n();
  // route_of[i]: route id; routes kept as deques via vectors.
  std::vector<std::vector<int>> routes(n);
  std::vector<int> route_of(n, -1);
  std::vector<int64_t> load(n, 0);
  for (int i = 1; i < n; ++i) {
    routes[i] = {i};
    route_of[i] = i;
    load[i] = inst.demand(i);
  }
  struct Saving {
    int64_t s;
    int i, j;
  };
  std::vector<Saving> savings;
  savings.reserve(static_cast<size_t>(n) * n / 2);
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      savings.push_back(
          {inst.cost(0, i) + inst.cost(0, j) - inst.cost(i, j), i, j});
    }
  }
  std::stable_sort(savings.begin(), savings.end(),
                   [](const Saving& a, const Saving& b) { return a.s > b.s; });
  for (const Saving& sv : savings) {
    if (sv.s <= 0) break;
    const int ri = route_of[sv.i], rj = route_of[sv.j];
    if (ri == rj) continue;
    if (load[ri] + load[rj] > inst.capacity()) continue;
    auto& a = routes[ri];
    auto& b = routes[rj];
    const bool i_front = a.front() == sv.i, i_back = a.back() == sv.i;
    const bool j_front = b.front() == sv.j, j_back = b.back() == sv.j;
    if (!(i_front || i_back) || !(j_front || j_back)) continue;
    // Orient a so it ends with i, b so it starts with j.
    if (!i_back) std::reverse(a.begin(), a.end());
    if (!j_front) std::reverse(b.begin(), b.end());
    a.insert(a.end(), b.begin(), b.end());
    for (int v : b) route_of[v] = ri;
    load[ri] += load[rj];
    b.clear();
    load[rj] = 0;
  }
  RouteSet out;
  for (int i = 1; i < n; ++i) {
    if (!routes[i].empty()) out.push_back(routes[i]);
  }
  return out;
}

}  // namespace cvrpcut
