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


#include "cvrpcut/driver.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <thread>

#include "cvrpcut/sep_fci.h"
#include "cvrpcut/sep_rci.h"

namespace cvrpcut {

const char* to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kExact:
      return "exact";
    case Strategy::kCoarsen:
      return "coarsen";
    case Strategy::kCoarsenGraphChip:
      return "coarsen+graphchip";
  }
  return "?";
}

Strategy parse_strategy(const std::string& name) {
  if (name == "exact") return Strategy::kExact;
  if (name == "coarsen") return Strategy::kCoarsen;
  if (name == "coarsen+graphchip" || name == "graphchip") {
    return Strategy::kCoarsenGraphChip;
  }
  throw ValidationError("unknown separation strategy: " + name);
}

void validate(const DriverConfig& config) {
  if (!(config.gamma > 0.0 && config.gamma < 1.0)) {
    throw ValidationError("gamma must lie in (0, 1)");
  }
  if (config.max_iterations < 0) {
    throw ValidationError("iteration limit must be non-negative");
  }
  if (!(config.time_limit_s > 0.0)) {
    throw ValidationError("time limit must be positive");
  }
  if (!(config.pool_violation > 0.0)) {
    throw ValidationError("violation threshold must be positive");
  }
  if (config.fci && config.strategy != Strategy::kCoarsenGraphChip) {
    throw ValidationError("FCI separation needs the coarsen+graphchip strategy");
  }
  if (config.ub && !(*config.ub > 0.0)) {
    throw ValidationError("upper bound must be positive");
  }
  if (config.jobs < 0) throw ValidationError("jobs must be non-negative");
  validate(config.policy);
}

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

uint64_t task_seed(uint64_t seed, int iteration, int m) {
  uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<uint64_t>(iteration));
  return splitmix64(h ^ (static_cast<uint64_t>(m) << 32));
}

void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min(jobs, count);
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace {

struct TaskOutput {
  std::vector<Cut> cuts;
  double max_rci_violation = -kInfinity;
  std::optional<std::vector<int>> subset;
  CoarseningHistory history;
  int64_t checks = 0;
};

}  // namespace

SeparationRound separate_round(const Instance& inst,
                               const FractionalSolution& sol,
                               const DriverConfig& config, int iteration,
                               const CutPool* pool) {
  const int k = fleet_bound(inst).k;
  HeuristicOracle fallback;
  const ProbabilityOracle& oracle = config.oracle ? *config.oracle : fallback;

  std::vector<SupportGraph> graphs(k);
  std::vector<TaskOutput> out(k);
  parallel_for(k, config.jobs, [&](int m) {
    graphs[m] = build_support(sol, inst, m);
    const SupportGraph& g = graphs[m];
    TaskOutput& o = out[m];
    auto keep = [&](const RciCandidate& c) {
      o.max_rci_violation = std::max(o.max_rci_violation, c.violation);
      if (c.subset.size() >= 2 && c.violation > config.pool_violation) {
        o.cuts.push_back(to_cut(c));
      }
    };
    if (config.strategy == Strategy::kExact) {
      if (auto c = exact_separate(g, m, config.exact_node_limit)) keep(*c);
      return;
    }
    EdgePolicy policy = config.policy;
    policy.seed = task_seed(config.seed, iteration, m);
    CoarseningSeparation cs = coarsening_separate(g, oracle, policy, config.gamma);
    if (!cs.candidate) return;
    keep(*cs.candidate);
    if (config.strategy == Strategy::kCoarsenGraphChip) {
      GraphChipStats stats;
      for (const RciCandidate& c :
           graphchip_rci(g, cs.candidate->subset, cs.candidate->violation,
                         cs.coarsening.history, &stats)) {
        keep(c);
      }
      o.checks = stats.checks;
    }
    o.subset = cs.candidate->subset;
    o.history = std::move(cs.coarsening.history);
  });

  SeparationRound round;
  round.max_rci_violation = 0.0;
  for (const TaskOutput& o : out) {
    round.max_rci_violation = std::max(round.max_rci_violation, o.max_rci_violation);
    round.graphchip_checks += o.checks;
  }

  if (config.fci && round.max_rci_violation < config.fci_gate) {
    round.fci_ran = true;
    parallel_for(k, config.jobs, [&](int m) {
      TaskOutput& o = out[m];
      if (!o.subset) return;
      for (const FciCandidate& c :
           graphchip_fci(graphs[m], *o.subset, o.history)) {
        if (c.violation > config.pool_violation) o.cuts.push_back(to_cut(c));
      }
    });
  }

  // First occurrence (in m order) wins; then canonical order.
  std::map<std::vector<int>, CutLogEntry> unique;
  for (int m = 0; m < k; ++m) {
    for (Cut& cut : out[m].cuts) {
      if (pool && pool->contains(cut)) continue;
      auto key = cut_key(cut);
      if (unique.count(key)) continue;
      CutLogEntry e;
      e.lhs = cut_lhs(sol, cut);
      e.iteration = iteration;
      e.m = m;
      cut.violation = static_cast<double>(cut.rhs) - e.lhs;
      if (!(cut.violation > config.pool_violation)) continue;
      e.cut = std::move(cut);
      unique.emplace(std::move(key), std::move(e));
    }
  }
  for (auto& [key, e] : unique) round.cuts.push_back(std::move(e));
  return round;
}

RootResult run_root(const Instance& inst, const DriverConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  };

  RootResult res;
  res.instance = inst.name();
  res.strategy = config.strategy;
  res.policy = config.policy.rule;
  res.fci = config.fci;
  res.seed = config.seed;
  if (config.ub) {
    res.ub = *config.ub;
    res.ub_source = "user";
  } else {
    res.ub = static_cast<double>(route_set_cost(inst, savings_routes(inst)));
    res.ub_source = "savings";
  }

  LinearProgram lp = build_relaxation(inst);
  CutPool pool;
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw InvariantViolation("root relaxation did not solve to optimality");
  }
  res.lp_iterations += sol.iterations;
  res.lb_history.push_back(sol.objective);
  res.stop_reason = "iteration-limit";

  for (int it = 1; it <= config.max_iterations; ++it) {
    if (elapsed() >= config.time_limit_s) {
      res.stop_reason = "time-limit";
      break;
    }
    const FractionalSolution x = to_fractional(inst, sol);
    SeparationRound round = separate_round(inst, x, config, it, &pool);
    int added = 0;
    for (CutLogEntry& e : round.cuts) {
      if (!add_cut(lp, pool, e.cut, inst.n())) continue;
      ++added;
      if (e.cut.kind == CutKind::kRci) {
        ++res.rci_cuts;
      } else {
        ++res.fci_cuts;
      }
      res.cut_log.push_back(std::move(e));
    }
    if (added == 0) {
      res.stop_reason = "no-cuts";
      break;
    }
    const Basis warm = sol.basis;
    sol = solve_lp(lp, &warm);
    if (sol.status == LpStatus::kInfeasible) {
      throw InvariantViolation("relaxation became infeasible after adding cuts");
    }
    if (sol.status != LpStatus::kOptimal) {
      throw InvariantViolation("relaxation did not solve to optimality");
    }
    res.lp_iterations += sol.iterations;
    res.iterations = it;
    res.lb_history.push_back(sol.objective);
  }

  res.lb = sol.objective;
  res.solution = to_fractional(inst, sol);
  res.gap = gap(res.ub, res.lb);
  res.wall_time_s = elapsed();
  return res;
}

}  // namespace cvrpcut
