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


#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvrpcut/instance.h"
#include "cvrpcut/json_io.h"
#include "cvrpcut/relaxation.h"
#include "cvrpcut_cli/cli.h"

namespace cvrpcut {
namespace {

using nlohmann::json;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cvrpcut");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::path(::testing::TempDir()) /
           ::testing::UnitTest::GetInstance()->current_test_info()->name();
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }
  std::string write_instance(int customers, uint64_t seed) const {
    const Instance inst = generate_random(customers, seed);
    const std::string p = path(inst.name() + ".vrp");
    write_cvrplib_file(inst, p);
    return p;
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, RootSolvePlainRelaxation) {
  const std::string vrp = write_instance(12, 1);
  const CliRun r = cli({"root-solve", vrp, "--max-iter", "0", "--jobs", "1"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("iterations"), 0);
  EXPECT_EQ(j.at("lb_history").size(), 1u);
  EXPECT_EQ(j.at("cuts").at("rci"), 0);
  EXPECT_EQ(j.at("stop_reason"), "iteration-limit");
}

TEST_F(CliTest, RootSolveWritesAllOutputs) {
  const std::string vrp = write_instance(20, 2);
  const CliRun r = cli({"root-solve", vrp, "--max-iter", "5", "--result",
                     path("r.json"), "--cut-log", path("c.jsonl"), "--table",
                     path("t.txt"), "--solution", path("s.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json res = json::parse(read_text_file(path("r.json")));
  const FractionalSolution sol = read_solution_file(path("s.json"));
  EXPECT_EQ(sol.n(), 21);
  EXPECT_DOUBLE_EQ(sol.objective(), res.at("lb").get<double>());
  std::istringstream log(read_text_file(path("c.jsonl")));
  int lines = 0;
  for (std::string line; std::getline(log, line); ++lines) {
    EXPECT_NO_THROW(json::parse(line));
  }
  EXPECT_EQ(lines, res.at("cuts").at("rci").get<int>());
  EXPECT_NE(read_text_file(path("t.txt")).find("Lowerbound"),
            std::string::npos);
}

TEST_F(CliTest, SeparateAtAnIntegerSolutionFindsNothing) {
  const Instance inst = generate_random(15, 3);
  const std::string vrp = path("i.vrp");
  write_cvrplib_file(inst, vrp);
  write_text_file(path("x.json"),
                  solution_json(route_set_solution(inst, savings_routes(inst))));
  for (const char* strategy : {"exact", "coarsen", "coarsen+graphchip"}) {
    const CliRun r = cli({"separate", vrp, path("x.json"), "--strategy", strategy});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(r.out, "") << strategy;
  }
}

TEST_F(CliTest, SeparateFindsCutsOnTheRelaxation) {
  const std::string vrp = write_instance(20, 4);
  ASSERT_EQ(cli({"root-solve", vrp, "--max-iter", "0", "--solution",
                 path("x.json"), "--result", path("r.json")})
                .code,
            cli::kExitOk);
  const CliRun r = cli({"separate", vrp, path("x.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::istringstream lines(r.out);
  int count = 0;
  for (std::string line; std::getline(lines, line); ++count) {
    const json j = json::parse(line);
    EXPECT_GT(j.at("violation").get<double>(), 0.0);
    EXPECT_EQ(j.at("iteration"), 1);
  }
  EXPECT_GT(count, 0);
}

TEST_F(CliTest, SeparateRejectsDimensionMismatch) {
  const std::string vrp = write_instance(10, 5);
  write_text_file(path("x.json"), R"({"n": 4, "edges": []})");
  const CliRun r = cli({"separate", vrp, path("x.json")});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("vertices"), std::string::npos);
}

TEST_F(CliTest, BppFromSplitDemands) {
  const CliRun r = cli({"bpp", "--cap", "144", "--items", "602:split,662:split"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("items"),
            json::parse("[144,144,144,144,26,144,144,144,144,86]"));
  EXPECT_EQ(j.at("l2"), 9);
  EXPECT_EQ(j.at("exact"), 9);
  EXPECT_EQ(j.at("exact_status"), "solved");
  EXPECT_GE(j.at("ffd").get<int>(), 9);
}

TEST_F(CliTest, BppSingleItemAndErrors) {
  const CliRun one = cli({"bpp", "--cap", "10", "--items", "7"});
  ASSERT_EQ(one.code, cli::kExitOk) << one.err;
  const json j = json::parse(one.out);
  EXPECT_EQ(j.at("l2"), 1);
  EXPECT_EQ(j.at("ffd"), 1);
  EXPECT_EQ(j.at("exact"), 1);
  EXPECT_EQ(cli({"bpp", "--cap", "10", "--items", "11"}).code,
            cli::kExitUsage);
  EXPECT_EQ(cli({"bpp", "--cap", "10", "--items", "3:halve"}).code,
            cli::kExitUsage);
  EXPECT_EQ(cli({"bpp", "--cap", "10", "--items", "3,,4"}).code,
            cli::kExitUsage);
  EXPECT_EQ(cli({"bpp", "--cap", "10"}).code, cli::kExitUsage);
}

TEST_F(CliTest, BppTooManyItemsForExactSearch) {
  std::string items = "1";
  for (int i = 0; i < 30; ++i) items += ",1";
  const json j = json::parse(cli({"bpp", "--cap", "10", "--items", items}).out);
  EXPECT_TRUE(j.at("exact").is_null());
  EXPECT_EQ(j.at("exact_status"), "too-many-items");
}

TEST_F(CliTest, GenIsDeterministicAndReparses) {
  const CliRun a = cli({"gen", "--count", "3", "--size", "25", "--seed", "9",
                     "--output-dir", path("a")});
  const CliRun b = cli({"gen", "--count", "3", "--size", "25", "--seed", "9",
                     "--output-dir", path("b")});
  ASSERT_EQ(a.code, cli::kExitOk) << a.err;
  ASSERT_EQ(b.code, cli::kExitOk) << b.err;
  std::istringstream pa(a.out), pb(b.out);
  std::string fa, fb;
  int files = 0;
  while (std::getline(pa, fa) && std::getline(pb, fb)) {
    EXPECT_EQ(read_text_file(fa), read_text_file(fb));
    const Instance inst = read_cvrplib_file(fa);
    EXPECT_EQ(inst.num_customers(), 25);
    EXPECT_EQ(inst, generate_random(25, 9 + files));
    ++files;
  }
  EXPECT_EQ(files, 3);
}

TEST_F(CliTest, SensitivityWithConstantOracle) {
  const CliRun r = cli({"sensitivity", "--generate", "2", "--size", "12",
                     "--constant", "0.5", "--cut-rounds", "1", "--report",
                     "-"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("summary").at("d1").at("max"), 0.0);
  EXPECT_GT(j.at("records").size(), 0u);
  EXPECT_EQ(cli({"sensitivity", "--generate", "1", "--constant", "0.5",
                 "--oracle", path("o.jsonl")})
                .code,
            cli::kExitUsage);
  EXPECT_EQ(cli({"sensitivity"}).code, cli::kExitUsage);
}

TEST_F(CliTest, DiversityReport) {
  const CliRun r = cli({"diversity", "--generate", "1", "--size", "15",
                     "--policies", "greedy", "softmax", "--runs", "3",
                     "--cut-rounds", "1", "--report", "-"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j.at("cells").size(), 2u);
  EXPECT_EQ(j.at("cells")[0].at("mean_jaccard"), 1.0);
  EXPECT_EQ(cli({"diversity", "--generate", "1", "--policies", "bogus"}).code,
            cli::kExitUsage);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, cli::kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(cli({"root-solve", path("missing.vrp")}).code, cli::kExitUsage);
  const std::string vrp = write_instance(8, 6);
  EXPECT_EQ(cli({"root-solve", vrp, "--strategy", "magic"}).code,
            cli::kExitUsage);
  EXPECT_EQ(cli({"root-solve", vrp, "--gamma", "1.5"}).code, cli::kExitUsage);
  EXPECT_EQ(cli({"root-solve", vrp, "--max-iter", "-3"}).code,
            cli::kExitUsage);
  EXPECT_EQ(cli({"root-solve", vrp, "--fci", "--strategy", "exact"}).code,
            cli::kExitUsage);
  EXPECT_EQ(cli({"root-solve", vrp, "--oracle", path("none.jsonl")}).code,
            cli::kExitUsage);
  write_text_file(path("bad.vrp"), "NAME : x\nDIMENSION : banana\n");
  EXPECT_EQ(cli({"root-solve", path("bad.vrp")}).code, cli::kExitUsage);
}

TEST_F(CliTest, HelpAndVersion) {
  const CliRun help = cli({"--help"});
  EXPECT_EQ(help.code, cli::kExitOk);
  EXPECT_NE(help.out.find("root-solve"), std::string::npos);
  const CliRun version = cli({"--version"});
  EXPECT_EQ(version.code, cli::kExitOk);
  EXPECT_FALSE(version.out.empty());
}

}  // namespace
}  // namespace cvrpcut
