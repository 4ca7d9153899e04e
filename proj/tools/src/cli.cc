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

#include "cvrpcut_cli/cli.h"

#include <cstdlib>
#include <filesystem>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cvrpcut/analysis.h"
#include "cvrpcut/bin_packing.h"
#include "cvrpcut/coarsen.h"
#include "cvrpcut/common.h"
#include "cvrpcut/driver.h"
#include "cvrpcut/instance.h"
#include "cvrpcut/json_io.h"

namespace cvrpcut::cli {
namespace {

using nlohmann::json;

bool quiet() {
  const char* v = std::getenv("CVRPCUT_QUIET");
  return v != nullptr && *v != '\0' && std::string(v) != "0";
}

// "-" means the given stream.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

struct SolverFlags {
  std::string strategy = "coarsen+graphchip";
  std::string policy = "greedy";
  double pi_max = EdgePolicy{}.pi_max;
  double tau = EdgePolicy{}.tau;
  double gamma = 0.75;
  uint64_t seed = 0;
  int max_iterations = 100;
  double time_limit = 3600.0;
  double pool_violation = tol::kPoolViolation;
  bool fci = false;
  double fci_gate = 1.0;
  std::optional<double> ub;
  int jobs = 0;
  std::string oracle;
  int64_t exact_node_limit = 0;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--strategy", f.strategy,
                  "exact, coarsen or coarsen+graphchip")
      ->capture_default_str();
  cmd->add_option("--policy", f.policy,
                  "greedy, pi-greedy, roulette or softmax")
      ->capture_default_str();
  cmd->add_option("--pi-max", f.pi_max, "noise bound for pi-greedy")
      ->capture_default_str();
  cmd->add_option("--tau", f.tau, "softmax temperature")->capture_default_str();
  cmd->add_option("--gamma", f.gamma, "coarsening ratio in (0, 1)")
      ->capture_default_str();
  cmd->add_option("--seed", f.seed)->capture_default_str();
  cmd->add_option("--max-iter", f.max_iterations,
                  "cutting-plane iterations (0 solves the plain relaxation)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--time-limit", f.time_limit, "seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--pool-violation", f.pool_violation,
                  "minimum violation for a cut to enter the LP")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_flag("--fci", f.fci, "also separate framed capacity inequalities");
  cmd->add_option("--fci-gate", f.fci_gate,
                  "run FCI separation when the largest RCI violation is below "
                  "this")
      ->capture_default_str();
  cmd->add_option("--ub", f.ub, "upper bound (default: savings heuristic)");
  cmd->add_option("--jobs", f.jobs, "worker threads (0: all cores)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--oracle", f.oracle,
                  "JSON-lines probability file (default: built-in heuristic)");
  cmd->add_option("--exact-node-limit", f.exact_node_limit,
                  "branch-and-bound nodes per exact separation (0: none)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

DriverConfig to_config(const SolverFlags& f,
                       const ProbabilityOracle* oracle) {
  DriverConfig c;
  c.strategy = parse_strategy(f.strategy);
  c.policy.rule = parse_selection_rule(f.policy);
  c.policy.pi_max = f.pi_max;
  c.policy.tau = f.tau;
  c.gamma = f.gamma;
  c.seed = f.seed;
  c.max_iterations = f.max_iterations;
  c.time_limit_s = f.time_limit;
  c.pool_violation = f.pool_violation;
  c.fci = f.fci;
  c.fci_gate = f.fci_gate;
  c.ub = f.ub;
  c.jobs = f.jobs;
  c.oracle = oracle;
  c.exact_node_limit = f.exact_node_limit;
  validate(c);
  validate(c.policy);
  return c;
}

std::unique_ptr<ProbabilityOracle> load_oracle(const std::string& path) {
  if (path.empty()) return nullptr;
  return file_oracle(path);
}

// Instances named on the command line followed by `generate` random ones.
struct InstanceSource {
  std::vector<std::string> files;
  int generate = 0;
  int size = 50;
  uint64_t seed = 0;
};

void add_instance_source(CLI::App* cmd, InstanceSource& s) {
  cmd->add_option("instances", s.files, "CVRPLIB files");
  cmd->add_option("--generate", s.generate, "number of random instances")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--size", s.size, "customers per random instance")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  cmd->add_option("--instance-seed", s.seed,
                  "seed of the first random instance")
      ->capture_default_str();
}

std::vector<Instance> load_instances(const InstanceSource& s) {
  std::vector<Instance> out;
  for (const auto& f : s.files) out.push_back(read_cvrplib_file(f));
  for (int i = 0; i < s.generate; ++i) {
    out.push_back(generate_random(s.size, s.seed + static_cast<uint64_t>(i)));
  }
  if (out.empty()) throw ValidationError("no instances given");
  return out;
}

// --- root-solve ----------------------------------------------------------

struct RootSolveArgs {
  std::string instance;
  SolverFlags solver;
  std::string result = "-";
  std::string cut_log;
  std::string table;
  std::string solution;
};

int root_solve(const RootSolveArgs& a, std::ostream& out) {
  const Instance inst = read_cvrplib_file(a.instance);
  auto oracle = load_oracle(a.solver.oracle);
  const DriverConfig config = to_config(a.solver, oracle.get());
  const RootResult r = run_root(inst, config);
  emit(a.result, result_json(r), out);
  if (!a.cut_log.empty()) emit(a.cut_log, cut_log_jsonl(r.cut_log), out);
  if (!a.solution.empty()) emit(a.solution, solution_json(r.solution), out);
  const std::string table = result_table(r);
  if (!a.table.empty()) emit(a.table, table, out);
  if (a.result != "-" && a.table.empty() && !quiet()) out << table;
  return kExitOk;
}

// --- separate ------------------------------------------------------------

struct SeparateArgs {
  std::string instance;
  std::string solution;
  SolverFlags solver;
  int iteration = 1;
  std::string output = "-";
};

int separate(const SeparateArgs& a, std::ostream& out) {
  const Instance inst = read_cvrplib_file(a.instance);
  const FractionalSolution sol = read_solution_file(a.solution);
  if (sol.n() != inst.n()) {
    throw ValidationError("solution has " + std::to_string(sol.n()) +
                          " vertices, instance has " +
                          std::to_string(inst.n()));
  }
  auto oracle = load_oracle(a.solver.oracle);
  const DriverConfig config = to_config(a.solver, oracle.get());
  const SeparationRound round =
      separate_round(inst, sol, config, a.iteration, nullptr);
  emit(a.output, cut_log_jsonl(round.cuts), out);
  return kExitOk;
}

// --- bpp -----------------------------------------------------------------

struct BppArgs {
  int64_t capacity = 0;
  std::string items;
  int64_t node_limit = 1'000'000;
};

// "602:split,662:split,30": ":split" turns a member demand into items of at
// most Q each, a bare number is one item.
BinPackingItems parse_items(const std::string& spec, int64_t cap) {
  BinPackingItems items;
  items.capacity = cap;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw ValidationError("empty item in --items");
    bool split = false;
    if (const auto colon = tok.find(':'); colon != std::string::npos) {
      if (tok.substr(colon + 1) != "split") {
        throw ValidationError("unknown item modifier in '" + tok + "'");
      }
      split = true;
      tok.resize(colon);
    }
    size_t used = 0;
    int64_t w = 0;
    try {
      w = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ValidationError("bad item '" + tok + "'");
    if (split) {
      const int64_t d[] = {w};
      const BinPackingItems part = to_items(d, cap);
      items.weights.insert(items.weights.end(), part.weights.begin(),
                           part.weights.end());
    } else {
      items.weights.push_back(w);
    }
  }
  validate(items);
  return items;
}

int bpp(const BppArgs& a, std::ostream& out) {
  const BinPackingItems items = parse_items(a.items, a.capacity);
  json j;
  j["capacity"] = items.capacity;
  j["items"] = items.weights;
  j["l2"] = l2_lower_bound(items);
  j["ffd"] = ffd_upper_bound(items);
  if (items.weights.size() > static_cast<size_t>(kBppExactMaxItems)) {
    j["exact"] = nullptr;
    j["exact_status"] = "too-many-items";
  } else if (auto e = bpp_exact(items, a.node_limit)) {
    j["exact"] = *e;
    j["exact_status"] = "solved";
  } else {
    j["exact"] = nullptr;
    j["exact_status"] = "node-limit";
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

// --- sensitivity ---------------------------------------------------------

struct SensitivityArgs {
  InstanceSource source;
  std::string oracle;
  std::optional<double> constant;
  SensitivityOptions options;
  std::string report;
};

std::unique_ptr<ProbabilityOracle> study_oracle(
    const std::string& path, const std::optional<double>& constant) {
  if (!path.empty() && constant) {
    throw ValidationError("--oracle and --constant are exclusive");
  }
  if (constant) return std::make_unique<ConstantOracle>(*constant);
  if (!path.empty()) return file_oracle(path);
  return heuristic_oracle();
}

int sensitivity(const SensitivityArgs& a, std::ostream& out) {
  const auto instances = load_instances(a.source);
  const auto oracle = study_oracle(a.oracle, a.constant);
  const SensitivityReport r = sensitivity_study(instances, *oracle, a.options);
  if (!a.report.empty()) emit(a.report, sensitivity_json(r), out);
  if (a.report != "-" && !quiet()) out << sensitivity_table(r);
  return kExitOk;
}

// --- diversity -----------------------------------------------------------

struct DiversityArgs {
  InstanceSource source;
  std::string oracle;
  std::vector<std::string> policies{"greedy", "pi-greedy"};
  double pi_max = EdgePolicy{}.pi_max;
  double tau = EdgePolicy{}.tau;
  int runs = 10;
  uint64_t seed = 0;
  DiversityOptions options;
  std::string report;
};

int diversity(const DiversityArgs& a, std::ostream& out) {
  const auto instances = load_instances(a.source);
  const auto oracle = study_oracle(a.oracle, std::nullopt);
  std::vector<EdgePolicy> policies;
  for (const auto& name : a.policies) {
    EdgePolicy p;
    p.rule = parse_selection_rule(name);
    p.pi_max = a.pi_max;
    p.tau = a.tau;
    validate(p);
    policies.push_back(p);
  }
  std::vector<uint64_t> seeds;
  for (int i = 0; i < a.runs; ++i) seeds.push_back(a.seed + i);
  const DiversityReport r =
      diversity_study(instances, *oracle, policies, seeds, a.options);
  if (!a.report.empty()) emit(a.report, diversity_json(r), out);
  if (a.report != "-" && !quiet()) out << diversity_table(r);
  return kExitOk;
}

// --- gen -----------------------------------------------------------------

struct GenArgs {
  int count = 1;
  int size = 50;
  uint64_t seed = 0;
  std::string output_dir = ".";
};

int gen(const GenArgs& a, std::ostream& out) {
  std::filesystem::create_directories(a.output_dir);
  for (int i = 0; i < a.count; ++i) {
    const Instance inst =
        generate_random(a.size, a.seed + static_cast<uint64_t>(i));
    const auto path =
        (std::filesystem::path(a.output_dir) / (inst.name() + ".vrp")).string();
    write_cvrplib_file(inst, path);
    out << path << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Capacity cut separation for the CVRP root relaxation",
               "cvrpcut"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(CVRPCUT_VERSION));

  RootSolveArgs rs;
  auto* rs_cmd = app.add_subcommand(
      "root-solve", "cutting-plane loop on the root LP relaxation");
  rs_cmd->add_option("instance", rs.instance, "CVRPLIB file")->required();
  add_solver_flags(rs_cmd, rs.solver);
  rs_cmd->add_option("--result", rs.result, "result JSON path ('-': stdout)")
      ->capture_default_str();
  rs_cmd->add_option("--cut-log", rs.cut_log, "cut log (JSON lines) path");
  rs_cmd->add_option("--table", rs.table, "summary table path");
  rs_cmd->add_option("--solution", rs.solution, "final LP point JSON path");

  SeparateArgs sp;
  auto* sp_cmd = app.add_subcommand(
      "separate", "one separation round on a given fractional solution");
  sp_cmd->add_option("instance", sp.instance, "CVRPLIB file")->required();
  sp_cmd->add_option("solution", sp.solution, "solution JSON file")
      ->required();
  add_solver_flags(sp_cmd, sp.solver);
  sp_cmd->add_option("--iteration", sp.iteration,
                     "iteration number used for seeding and the cut log")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sp_cmd->add_option("--output", sp.output, "cut list path ('-': stdout)")
      ->capture_default_str();

  BppArgs bp;
  auto* bp_cmd = app.add_subcommand("bpp", "bin-packing bounds");
  bp_cmd->add_option("--cap", bp.capacity, "bin capacity")
      ->required()
      ->check(CLI::PositiveNumber);
  bp_cmd->add_option("--items", bp.items,
                     "comma-separated weights; W:split splits a demand W")
      ->required();
  bp_cmd->add_option("--node-limit", bp.node_limit,
                     "search nodes for the exact value")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  SensitivityArgs se;
  auto* se_cmd = app.add_subcommand(
      "sensitivity", "oracle sensitivity and subset similarity over m");
  add_instance_source(se_cmd, se.source);
  se_cmd->add_option("--oracle", se.oracle, "JSON-lines probability file");
  se_cmd->add_option("--constant", se.constant,
                     "use the same probability for every vertex")
      ->check(CLI::Range(0.0, 1.0));
  se_cmd->add_option("--eps", se.options.eps, "finite-difference step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  se_cmd->add_option("--gamma", se.options.gamma)->capture_default_str();
  se_cmd->add_option("--cut-rounds", se.options.cut_rounds,
                     "cut rounds before the studied LP point")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  se_cmd->add_option("--jobs", se.options.jobs)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  se_cmd->add_option("--report", se.report, "report JSON path ('-': stdout)");

  DiversityArgs dv;
  auto* dv_cmd = app.add_subcommand(
      "diversity", "Jaccard similarity of coarsened subsets across seeds");
  add_instance_source(dv_cmd, dv.source);
  dv_cmd->add_option("--oracle", dv.oracle, "JSON-lines probability file");
  dv_cmd->add_option("--policies", dv.policies)
      ->delimiter(',')
      ->capture_default_str();
  dv_cmd->add_option("--pi-max", dv.pi_max)->capture_default_str();
  dv_cmd->add_option("--tau", dv.tau)->capture_default_str();
  dv_cmd->add_option("--runs", dv.runs, "seeds per policy")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  dv_cmd->add_option("--seed", dv.seed, "first selection seed")
      ->capture_default_str();
  dv_cmd->add_option("--gamma", dv.options.gamma)->capture_default_str();
  dv_cmd->add_option("--cut-rounds", dv.options.cut_rounds)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  dv_cmd->add_option("--jobs", dv.options.jobs)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  dv_cmd->add_option("--report", dv.report, "report JSON path ('-': stdout)");

  GenArgs gn;
  auto* gn_cmd = app.add_subcommand("gen", "write random CVRPLIB instances");
  gn_cmd->add_option("--count", gn.count)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  gn_cmd->add_option("--size", gn.size, "customers")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  gn_cmd->add_option("--seed", gn.seed)->capture_default_str();
  gn_cmd->add_option("--output-dir", gn.output_dir)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*rs_cmd) return root_solve(rs, out);
    if (*sp_cmd) return separate(sp, out);
    if (*bp_cmd) return bpp(bp, out);
    if (*se_cmd) return sensitivity(se, out);
    if (*dv_cmd) return diversity(dv, out);
    if (*gn_cmd) return gen(gn, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace cvrpcut::cli
