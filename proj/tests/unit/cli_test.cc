// Copyright 2026 The qalloc Authors
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

#include "cli.h"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qalloc/assignment.h"

namespace qalloc::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qalloc");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path Data(const std::string& name) { return fs::path(QALLOC_SOURCE_DIR) / "data" / name; }

nlohmann::json ReadJson(const fs::path& path) {
  std::ifstream in(path);
  return nlohmann::json::parse(in);
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qalloc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Dir(const std::string& sub) const { return (dir_ / sub).string(); }

  fs::path dir_;
};

TEST_F(CliTest, RunPresetWritesExports) {
  const Result r = Cli({"run", "S1", "--seed", "7", "--out", Dir("s1")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* f : {"queues.csv", "waits.csv", "events.jsonl", "summary.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "s1" / f)) << f;
  }
  EXPECT_NE(r.out.find("S1 seed=7 delivered=30 "), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("final_queues=0,0,0"), std::string::npos) << r.out;
  EXPECT_EQ(ReadJson(dir_ / "s1" / "summary.json")["seed"], 7);
}

TEST_F(CliTest, SummaryEchoesWeights) {
  const Result r = Cli({"run", "S5", "--horizon", "200", "--out", Dir("s5")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find(" q=0 tau=100 "), std::string::npos) << r.out;
  const auto summary = ReadJson(dir_ / "s5" / "summary.json");
  EXPECT_EQ(summary["config"]["penalty"]["q"], 0.0);
  EXPECT_EQ(summary["config"]["penalty"]["tau"], 100.0);
  EXPECT_EQ(summary["horizon"], 200);
}

TEST_F(CliTest, OverridesApply) {
  const Result r = Cli({"run", "S3", "--horizon", "150", "--q", "5", "--tau", "2.5", "--tau-mode",
                        "total_count", "--m", "2", "--out", Dir("s3")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find(" q=5 tau=2.5 tau_mode=total_count "), std::string::npos) << r.out;
  const auto config = ReadJson(dir_ / "s3" / "summary.json")["config"];
  for (const auto& s : config["stations"]) EXPECT_EQ(s["capacity"], 2);
}

TEST_F(CliTest, SameArgumentsSameOutput) {
  const Result a = Cli({"run", "S4", "--horizon", "300", "--seed", "3", "--out", Dir("a")});
  const Result b = Cli({"run", "S4", "--horizon", "300", "--seed", "3", "--out", Dir("a")});
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, SeedDoesNotChangeConfigEcho) {
  ASSERT_EQ(Cli({"run", "S3", "--horizon", "100", "--seed", "1", "--out", Dir("a")}).code, 0);
  ASSERT_EQ(Cli({"run", "S3", "--horizon", "100", "--seed", "2", "--out", Dir("b")}).code, 0);
  EXPECT_EQ(ReadJson(dir_ / "a" / "summary.json")["config"],
            ReadJson(dir_ / "b" / "summary.json")["config"]);
}

TEST_F(CliTest, RunScenarioFile) {
  const Result r = Cli({"run", Data("small_hall.yaml").string(), "--horizon", "200", "--out",
                        Dir("hall")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("small_hall seed=7 ", 0), 0u) << r.out;
}

TEST_F(CliTest, SolveMatchesOracle) {
  const Result r = Cli({"solve", Data("tiny_instance.txt").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(Data("tiny_instance.txt"));
  const CostInstance inst = ReadInstance(in);
  const Assignment best =
      BruteForceOracle(AssignmentProblem::FromEdgeCosts(inst.edges, inst.caps));
  std::ostringstream want;
  for (const auto& [agent, task] : best.pairs) {
    want << "agent " << agent << " -> task " << task << '\n';
  }
  EXPECT_EQ(r.out.substr(0, want.str().size()), want.str());
  EXPECT_NE(r.out.find("pairs=2 objective=" + std::to_string(best.objective)), std::string::npos);
}

TEST_F(CliTest, SolveCapOverride) {
  fs::create_directories(dir_);
  std::ofstream(dir_ / "one_station.txt") << "0 0 0 1\n1 1 0 2\n";
  EXPECT_NE(Cli({"solve", Dir("one_station.txt")}).out.find("pairs=1 "), std::string::npos);
  EXPECT_NE(Cli({"solve", Dir("one_station.txt"), "--m", "2"}).out.find("pairs=2 "),
            std::string::npos);
}

TEST_F(CliTest, PresetsListed) {
  const Result r = Cli({"presets"});
  ASSERT_EQ(r.code, kExitOk);
  for (const char* name : {"S1:", "S2:", "S3:", "S4:", "S5:"}) {
    EXPECT_NE(r.out.find(name), std::string::npos) << name;
  }
  EXPECT_NE(r.out.find("S2: initial=10/10/15"), std::string::npos) << r.out;
}

TEST_F(CliTest, Validate) {
  const Result ok = Cli({"validate", Data("small_hall.yaml").string()});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_NE(ok.out.find("ok (2 stations, 2 agents)"), std::string::npos);
  const Result bad = Cli({"validate", Data("small_hall.yaml").string(), "--horizon", "0"});
  EXPECT_EQ(bad.code, kExitUsage);
  EXPECT_NE(bad.err.find("horizon"), std::string::npos) << bad.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"run", "S9"}).code, kExitUsage);
  EXPECT_EQ(Cli({"run", "S1", "--speed", "3"}).code, kExitUsage);
  EXPECT_EQ(Cli({"run", "S1", "--tau-mode", "sometimes"}).code, kExitUsage);
  EXPECT_EQ(Cli({"solve", Dir("missing.txt")}).code, kExitUsage);
  EXPECT_EQ(Cli({"validate", Dir("missing.yaml")}).code, kExitUsage);
  fs::create_directories(dir_);
  std::ofstream(dir_ / "broken.txt") << "0 0 zero 1\n";
  const Result broken = Cli({"solve", Dir("broken.txt")});
  EXPECT_EQ(broken.code, kExitUsage);
  EXPECT_NE(broken.err.find("line 1"), std::string::npos) << broken.err;
}

TEST_F(CliTest, HelpExitsCleanly) {
  const Result r = Cli({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("run"), std::string::npos);
}

}  // namespace
}  // namespace qalloc::cli
