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


#include "cvrpcut/analysis.h"

#include <algorithm>
#include <cmath>

#include "cvrpcut/common.h"
#include "cvrpcut/driver.h"

namespace cvrpcut {

double d1_partial(const ProbabilityOracle& oracle, const SupportGraph& graph,
                  double eps) {
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  const std::vector<double> base = oracle.evaluate(graph);
  SupportGraph shifted = graph;
  for (auto& f : shifted.features) f[1] += eps;
  const std::vector<double> moved = oracle.evaluate(shifted);
  double best = 0.0;
  for (int i = 1; i < graph.n; ++i) {
    best = std::max(best, std::abs(moved[i] - base[i]) / eps);
  }
  return best;
}

double d2_cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("vector lengths differ");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw ValidationError("zero probability vector");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double d3_jaccard(std::span<const int> a, std::span<const int> b) {
  std::vector<int> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa.empty() && sb.empty()) return 1.0;
  std::vector<int> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                        std::back_inserter(common));
  const size_t uni = sa.size() + sb.size() - common.size();
  return static_cast<double>(common.size()) / static_cast<double>(uni);
}

Quartiles quartiles(std::vector<double> values) {
  Quartiles q;
  q.count = static_cast<int64_t>(values.size());
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  auto at = [&](double frac) {
    const double pos = frac * static_cast<double>(values.size() - 1);
    const size_t lo = static_cast<size_t>(std::floor(pos));
    const size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  q.min = values.front();
  q.q1 = at(0.25);
  q.median = at(0.5);
  q.q3 = at(0.75);
  q.max = values.back();
  return q;
}

FractionalSolution study_solution(const Instance& inst, int rounds, int jobs) {
  DriverConfig cfg;
  cfg.strategy = Strategy::kCoarsen;
  cfg.max_iterations = rounds;
  cfg.jobs = jobs;
  return run_root(inst, cfg).solution;
}

namespace {

std::vector<double> customer_part(const std::vector<double>& p) {
  return std::vector<double>(p.begin() + 1, p.end());
}

std::vector<int> coarsened_subset(const SupportGraph& g,
                               const ProbabilityOracle& oracle, double gamma,
                               const EdgePolicy& policy) {
  const CoarseningResult r = coarsen(g, oracle, policy, gamma);
  return assign_and_uncoarsen(r.final_probabilities, r.history)
      .value_or(std::vector<int>{});
}

}  // namespace

SensitivityReport sensitivity_study(std::span<const Instance> instances,
                                    const ProbabilityOracle& oracle,
                                    const SensitivityOptions& options) {
  struct Work {
    std::vector<SensitivityRecord> records;
  };
  std::vector<Work> work(instances.size());
  parallel_for(static_cast<int>(instances.size()), options.jobs, [&](int l) {
    const Instance& inst = instances[l];
    const FractionalSolution x = study_solution(inst, options.cut_rounds, 1);
    const int k = fleet_bound(inst).k;
    std::vector<std::vector<double>> p(k);
    std::vector<std::vector<int>> s(k);
    auto& recs = work[l].records;
    for (int m = 0; m < k; ++m) {
      const SupportGraph g = build_support(x, inst, m);
      p[m] = customer_part(oracle.evaluate(g));
      s[m] = coarsened_subset(g, oracle, options.gamma, EdgePolicy{});
      SensitivityRecord r;
      r.instance = inst.name();
      r.m = m;
      r.d1 = d1_partial(oracle, g, options.eps);
      recs.push_back(r);
    }
    for (int m = 0; m + 1 < k; ++m) {
      recs[m].has_next = true;
      recs[m].d2 = d2_cosine(p[m], p[m + 1]);
      recs[m].both_empty = s[m].empty() && s[m + 1].empty();
      recs[m].d3 = d3_jaccard(s[m], s[m + 1]);
    }
  });

  SensitivityReport rep;
  std::vector<double> d1, d2, d3;
  for (auto& w : work) {
    for (auto& r : w.records) {
      d1.push_back(r.d1);
      if (r.has_next) {
        d2.push_back(r.d2);
        d3.push_back(r.d3);
        if (r.both_empty) ++rep.empty_pairs;
      }
      rep.records.push_back(std::move(r));
    }
  }
  rep.d1 = quartiles(std::move(d1));
  rep.d2 = quartiles(std::move(d2));
  rep.d3 = quartiles(std::move(d3));
  return rep;
}

DiversityReport diversity_study(std::span<const Instance> instances,
                                const ProbabilityOracle& oracle,
                                std::span<const EdgePolicy> policies,
                                std::span<const uint64_t> seeds,
                                const DiversityOptions& options) {
  if (seeds.size() < 2) throw ValidationError("diversity needs at least two seeds");
  const int ni = static_cast<int>(instances.size());
  const int np = static_cast<int>(policies.size());
  std::vector<FractionalSolution> sols(ni);
  parallel_for(ni, options.jobs, [&](int l) {
    sols[l] = study_solution(instances[l], options.cut_rounds, 1);
  });

  std::vector<DiversityCell> cells(static_cast<size_t>(ni) * np);
  std::vector<int64_t> empties(cells.size(), 0);
  parallel_for(static_cast<int>(cells.size()), options.jobs, [&](int c) {
    const int l = c / np;
    const EdgePolicy& base = policies[c % np];
    const Instance& inst = instances[l];
    const int k = fleet_bound(inst).k;
    double sum = 0.0;
    int64_t pairs = 0;
    for (int m = 0; m < k; ++m) {
      const SupportGraph g = build_support(sols[l], inst, m);
      std::vector<std::vector<int>> subsets;
      for (uint64_t seed : seeds) {
        EdgePolicy policy = base;
        policy.seed = seed;
        subsets.push_back(coarsened_subset(g, oracle, options.gamma, policy));
      }
      for (size_t a = 0; a < subsets.size(); ++a) {
        for (size_t b = a + 1; b < subsets.size(); ++b) {
          if (subsets[a].empty() && subsets[b].empty()) ++empties[c];
          sum += d3_jaccard(subsets[a], subsets[b]);
          ++pairs;
        }
      }
    }
    DiversityCell& cell = cells[c];
    cell.instance = inst.name();
    cell.customers = inst.num_customers();
    cell.policy = to_string(base.rule);
    cell.runs = static_cast<int>(seeds.size());
    cell.mean_jaccard = pairs > 0 ? sum / static_cast<double>(pairs) : 1.0;
  });

  DiversityReport rep;
  rep.cells = std::move(cells);
  for (int64_t e : empties) rep.empty_pairs += e;
  return rep;
}

}  // namespace cvrpcut
