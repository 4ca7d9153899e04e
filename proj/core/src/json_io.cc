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


#include "cvrpcut/json_io.h"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "cvrpcut/common.h"

namespace cvrpcut {

namespace {

using nlohmann::json;

json quartiles_json(const Quartiles& q) {
  return {{"count", q.count}, {"min", q.min},       {"q1", q.q1},
          {"median", q.median}, {"q3", q.q3}, {"max", q.max}};
}

}  // namespace

std::string cut_log_line(const CutLogEntry& entry) {
  const Cut& c = entry.cut;
  json j;
  j["kind"] = to_string(c.kind);
  if (c.kind == CutKind::kRci) {
    j["vertices"] = c.subset;
  } else {
    j["partition"] = {{"frame", c.frame}, {"members", c.members}};
  }
  j["rhs"] = c.rhs;
  j["lhs"] = entry.lhs;
  j["violation"] = c.violation;
  j["iteration"] = entry.iteration;
  j["m"] = entry.m;
  j["source"] = to_string(c.source);
  j["lifted"] = c.lifted;
  if (c.fci) {
    j["items"] = c.fci->items;
    j["r_value"] = c.fci->r_value;
    j["r_tag"] = to_string(c.fci->r_tag);
  }
  return j.dump();
}

std::string cut_log_jsonl(std::span<const CutLogEntry> entries) {
  std::string out;
  for (const CutLogEntry& e : entries) {
    out += cut_log_line(e);
    out += '\n';
  }
  return out;
}

std::string result_json(const RootResult& r) {
  json j;
  j["instance"] = r.instance;
  j["strategy"] = to_string(r.strategy);
  j["policy"] = to_string(r.policy);
  j["fci"] = r.fci;
  j["seed"] = r.seed;
  j["lb"] = r.lb;
  j["ub"] = r.ub;
  j["ub_source"] = r.ub_source;
  j["gap"] = r.gap;
  j["iterations"] = r.iterations;
  j["cuts"] = {{"rci", r.rci_cuts}, {"fci", r.fci_cuts}};
  j["lb_history"] = r.lb_history;
  j["stop_reason"] = r.stop_reason;
  j["lp_iterations"] = r.lp_iterations;
  return j.dump(2) + "\n";
}

std::string result_table(const RootResult& r) {
  const std::string method = r.fci ? "RCI+FCI" : "RCI";
  std::string algorithm = to_string(r.strategy);
  if (r.strategy != Strategy::kExact) {
    algorithm += fmt::format(" ({})", to_string(r.policy));
  }
  const std::string fci = r.fci ? std::to_string(r.fci_cuts) : "-";
  std::string out;
  out += fmt::format("Results on {}\n", r.instance);
  out += fmt::format("{:<8} {:<30} {:>14} {:>8} {:>9}\n", "Method", "Algorithm",
                     "Lowerbound", "Gap", "FCI cuts");
  out += fmt::format("{:<8} {:<30} {:>14.2f} {:>7.2f}% {:>9}\n", method,
                     algorithm, r.lb, r.gap, fci);
  out += fmt::format("Upper bound ({}): {:.1f}   iterations: {}   RCI cuts: {}"
                     "   stop: {}\n",
                     r.ub_source, r.ub, r.iterations, r.rci_cuts,
                     r.stop_reason);
  return out;
}

std::string solution_json(const FractionalSolution& sol) {
  json edges = json::array();
  for (const WeightedEdge& e : sol.support(0.0)) {
    edges.push_back({e.u, e.v, e.x});
  }
  json j;
  j["n"] = sol.n();
  j["edges"] = std::move(edges);
  j["objective"] = sol.objective();
  return j.dump() + "\n";
}

FractionalSolution parse_solution_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("solution: ") + e.what());
  }
  try {
    const int n = j.at("n").get<int>();
    if (n < 2) throw ValidationError("solution must have n >= 2");
    std::vector<WeightedEdge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) {
        throw ParseError("solution edge must be [i, j, value]");
      }
      edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    const double obj = j.value("objective", 0.0);
    return FractionalSolution::from_edges(n, edges, obj);
  } catch (const json::exception& e) {
    throw ParseError(std::string("solution: ") + e.what());
  }
}

FractionalSolution read_solution_file(const std::string& path) {
  return parse_solution_json(read_text_file(path));
}

std::string sensitivity_json(const SensitivityReport& rep) {
  json records = json::array();
  for (const SensitivityRecord& r : rep.records) {
    json o = {{"instance", r.instance}, {"m", r.m}, {"d1", r.d1}};
    if (r.has_next) {
      o["d2"] = r.d2;
      o["d3"] = r.d3;
      o["both_empty"] = r.both_empty;
    }
    records.push_back(std::move(o));
  }
  json j;
  j["records"] = std::move(records);
  j["summary"] = {{"d1", quartiles_json(rep.d1)},
                  {"d2", quartiles_json(rep.d2)},
                  {"d3", quartiles_json(rep.d3)}};
  j["empty_pairs"] = rep.empty_pairs;
  return j.dump(2) + "\n";
}

std::string sensitivity_table(const SensitivityReport& rep) {
  std::string out = fmt::format("{:<6} {:>6} {:>10} {:>10} {:>10} {:>10} {:>10}\n",
                                "metric", "count", "min", "q1", "median", "q3",
                                "max");
  auto row = [&](const char* name, const Quartiles& q) {
    out += fmt::format("{:<6} {:>6} {:>10.4f} {:>10.4f} {:>10.4f} {:>10.4f} "
                       "{:>10.4f}\n",
                       name, q.count, q.min, q.q1, q.median, q.q3, q.max);
  };
  row("D1", rep.d1);
  row("D2", rep.d2);
  row("D3", rep.d3);
  return out;
}

std::string diversity_json(const DiversityReport& rep) {
  json cells = json::array();
  for (const DiversityCell& c : rep.cells) {
    cells.push_back({{"instance", c.instance},
                     {"customers", c.customers},
                     {"policy", c.policy},
                     {"runs", c.runs},
                     {"mean_jaccard", c.mean_jaccard}});
  }
  json j;
  j["cells"] = std::move(cells);
  j["empty_pairs"] = rep.empty_pairs;
  return j.dump(2) + "\n";
}

std::string diversity_table(const DiversityReport& rep) {
  std::string out = fmt::format("{:<24} {:>9} {:<10} {:>5} {:>12}\n", "instance",
                                "customers", "policy", "runs", "mean D3");
  for (const DiversityCell& c : rep.cells) {
    out += fmt::format("{:<24} {:>9} {:<10} {:>5} {:>12.6f}\n", c.instance,
                       c.customers, c.policy, c.runs, c.mean_jaccard);
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

}  // namespace cvrpcut
