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


// JSON and text renderings of cuts, results, solutions and study reports.

#ifndef CVRPCUT_JSON_IO_H_
#define CVRPCUT_JSON_IO_H_

#include <span>
#include <string>
#include <string_view>

#include "cvrpcut/analysis.h"
#include "cvrpcut/driver.h"
#include "cvrpcut/relaxation.h"

namespace cvrpcut {

// One JSON object, no trailing newline.
std::string cut_log_line(const CutLogEntry& entry);
// JSON lines, each terminated by a newline.
std::string cut_log_jsonl(std::span<const CutLogEntry> entries);

// Everything in RootResult except the wall time and the LP point, so that
// identical runs give identical bytes.
std::string result_json(const RootResult& result);
std::string result_table(const RootResult& result);

// {"n": n, "edges": [[i, j, value], ...]} listing the nonzero edges.
std::string solution_json(const FractionalSolution& sol);
FractionalSolution parse_solution_json(std::string_view text);
FractionalSolution read_solution_file(const std::string& path);

std::string sensitivity_json(const SensitivityReport& report);
std::string sensitivity_table(const SensitivityReport& report);
std::string diversity_json(const DiversityReport& report);
std::string diversity_table(const DiversityReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace cvrpcut

#endif  // CVRPCUT_JSON_IO_H_
