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


#include "cvrpcut/sep_rci.h"

#include <algorithm>
#include <cmath>

#include "cvrpcut/common.h"

namespace cvrpcut {

int64_t rci_rhs(int64_t demand_sum, int64_t capacity) {
  return 2 * ceil_div(demand_sum, capacity);
}

RciCandidate evaluate_rci(const SupportGraph& graph, std::vector<int> subset,
                          CutSource source) {
  std::sort(subset.begin(), subset.end());
  RciCandidate c;
  int64_t d = 0;
  for (int v : subset) d += graph.demand[v];
  c.lhs = boundary_value(graph.edges, graph.n, subset);
  c.rhs = rci_rhs(d, graph.capacity);
  c.violation = static_cast<double>(c.rhs) - c.lhs;
  c.source = source;
  c.subset = std::move(subset);
  return c;
}

Cut to_cut(const RciCandidate& candidate) {
  Cut cut;
  cut.kind = CutKind::kRci;
  cut.subset = candidate.subset;
  cut.rhs = candidate.rhs;
  cut.violation = candidate.violation;
  cut.source = candidate.source;
  cut.lifted = candidate.lifted;
  return cut;
}

ExactSeparationResult solve_exact_separation(const SupportGraph& graph, int m,
                                             std::optional<double> cutoff,
                                             int64_t node_limit) {
  ExactSeparationResult res;
  const int64_t need = static_cast<int64_t>(m) * graph.capacity + 1;
  if (graph.total_customer_demand() < need) return res;

  // Variables: y_0..y_{n-1}, then one w per support edge.
  MipSpec mip;
  LinearProgram& lp = mip.base;
  for (int i = 0; i < graph.n; ++i) {
    lp.add_variable(0.0, 0.0, i == 0 ? 0.0 : 1.0);
    if (i > 0) {
      mip.integer_vars.push_back(i);
      mip.binary.push_back(true);
    }
  }
  for (const WeightedEdge& e : graph.edges) {
    const int w = lp.add_variable(e.x, 0.0, kInfinity);
    const int idx_a[] = {w, e.u, e.v};
    const double val_a[] = {1.0, -1.0, 1.0};
    lp.add_row(idx_a, val_a, RowSense::kGreaterEqual, 0.0);
    const double val_b[] = {1.0, 1.0, -1.0};
    lp.add_row(idx_a, val_b, RowSense::kGreaterEqual, 0.0);
  }
  std::vector<int> idx;
  std::vector<double> val;
  for (int i = 1; i < graph.n; ++i) {
    idx.push_back(i);
    val.push_back(static_cast<double>(graph.demand[i]));
  }
  lp.add_row(idx, val, RowSense::kGreaterEqual, static_cast<double>(need));

  MipOptions opts;
  opts.node_limit = node_limit;
  const MipSolution sol = solve_mip(mip, cutoff, opts);
  res.nodes = sol.nodes;
  res.proven = sol.proven_optimal;
  if (sol.status != LpStatus::kOptimal) {
    if (sol.status != LpStatus::kInfeasible) {
      throw InvariantViolation("separation MILP ended with unexpected status");
    }
    // With a cutoff, "infeasible" only says nothing beats it.
    return res;
  }
  res.feasible = true;
  for (int i = 1; i < graph.n; ++i) {
    if (sol.x[i] > 0.5) res.subset.push_back(i);
  }
  // Report the boundary of the rounded set, not the LP objective.
  res.z = boundary_value(graph.edges, graph.n, res.subset);
  return res;
}

std::optional<RciCandidate> exact_separate(const SupportGraph& graph, int m,
                                           int64_t node_limit) {
  const double threshold = 2.0 * (m + 1) - tol::kSeparation;
  const ExactSeparationResult r =
      solve_exact_separation(graph, m, threshold, node_limit);
  if (!r.feasible || !(r.z < threshold)) return std::nullopt;
  RciCandidate c = evaluate_rci(graph, r.subset, CutSource::kExact);
  const int64_t base = 2 * static_cast<int64_t>(m + 1);
  if (c.rhs > base) {
    c.lifted = true;
  } else {
    c.rhs = base;
  }
  c.violation = static_cast<double>(c.rhs) - c.lhs;
  return c;
}

CoarseningSeparation coarsening_separate(const SupportGraph& graph,
                                         const ProbabilityOracle& oracle,
                                         const EdgePolicy& policy,
                                         double gamma) {
  CoarseningSeparation out;
  out.coarsening = coarsen(graph, oracle, policy, gamma);
  auto s = assign_and_uncoarsen(out.coarsening.final_probabilities,
                                out.coarsening.history);
  if (s) out.candidate = evaluate_rci(graph, std::move(*s), CutSource::kCoarsen);
  return out;
}

std::vector<std::vector<int>> supernodes_within(
    const CoarseningHistory& history, int t, std::span<const int> subset) {
  std::vector<char> in(history.original_n, 0);
  for (int v : subset) in[v] = 1;
  std::vector<std::vector<int>> out;
  const auto& members = history.levels[t].members;
  for (size_t u = 1; u < members.size(); ++u) {
    const auto& h = members[u];
    if (h.empty()) continue;
    // Levels refine the coarsest partition, so checking one member is
    // enough; the debug check confirms it.
    const bool inside = in[h.front()] != 0;
    CVRPCUT_DCHECK(std::all_of(h.begin(), h.end(),
                               [&](int v) { return (in[v] != 0) == inside; }),
                   "supernode straddles the selected subset");
    if (inside) out.push_back(h);
  }
  return out;
}

std::vector<RciCandidate> graphchip_rci(const SupportGraph& graph,
                                        std::span<const int> subset,
                                        double violation,
                                        const CoarseningHistory& history,
                                        GraphChipStats* stats) {
  GraphChipStats local;
  std::vector<RciCandidate> found;
  if (violation > 0.0) {
    if (stats) *stats = local;
    return found;
  }
  for (int t = history.depth() - 1; t >= 1; --t) {
    ++local.levels_scanned;
    for (auto& h : supernodes_within(history, t, subset)) {
      ++local.checks;
      if (h.size() < 2) continue;
      RciCandidate c = evaluate_rci(graph, std::move(h), CutSource::kGraphChipRci);
      if (c.violation > tol::kSeparation) found.push_back(std::move(c));
    }
    if (!found.empty()) break;
  }
#ifndef NDEBUG
  // Each level contributes at most its customer supernodes, which is where
  // the geometric bound on the check count comes from.
  int64_t level_total = 0;
  for (int t = history.depth() - 1; t >= 1; --t) {
    level_total += history.size(t) - 1;
  }
  CVRPCUT_DCHECK(local.checks <= level_total, "GraphCHiP check count exceeded");
#endif
  if (stats) *stats = local;
  return found;
}

}  // namespace cvrpcut
