// Copyright 2026 The mechcheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mechcheck/cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "mechcheck/scenario_file.h"

namespace mechcheck {
namespace {

const std::string kDir = MECHCHECK_SCENARIO_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mechcheck");
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return CliRun{code, out.str(), err.str()};
}

std::string Path(const std::string& name) { return kDir + "/" + name; }

// Resolves the file arguments of a manifest entry against the corpus directory.
std::vector<std::string> Resolve(const nlohmann::json& args) {
  std::vector<std::string> out;
  bool file_next = false;
  for (const auto& a : args) {
    const std::string s = a.get<std::string>();
    out.push_back(file_next ? Path(s) : s);
    file_next = s == "--scenario" || s == "--grid";
  }
  return out;
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) {
    setenv(name, value, 1);
  }
  ~ScopedEnv() { unsetenv(name_); }

 private:
  const char* name_;
};

TEST(CliTest, GoldenReports) {
  const auto manifest = nlohmann::json::parse(ReadFile(Path("golden/manifest.json")));
  ASSERT_FALSE(manifest.empty());
  for (const auto& c : manifest) {
    std::vector<std::string> args = Resolve(c["args"]);
    args.push_back("--output");
    args.push_back("json");
    const CliRun r = Cli(args);
    const std::string name = c["golden"];
    EXPECT_EQ(r.code, c["exit"].get<int>()) << name << "\n" << r.err;
    EXPECT_EQ(r.out, ReadFile(Path("golden/" + name))) << name;
  }
}

TEST(CliTest, PassExitsZero) {
  const CliRun r = Cli({"check", "bic", "--scenario", Path("two_type.json")});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  EXPECT_NE(r.out.find("pass"), std::string::npos) << r.out;
}

TEST(CliTest, ViolationExitsOneWithWitness) {
  const CliRun r = Cli({"check", "vcg-truth", "--grid", Path("first_price_grid.json"),
                     "--output", "json"});
  EXPECT_EQ(r.code, kExitViolation);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["verdict"], "fail");
  ASSERT_FALSE(doc["witnesses"].empty());
  EXPECT_TRUE(doc["witnesses"][0].contains("margin"));
}

TEST(CliTest, PaymentRuleFlagOverridesGrid) {
  const CliRun r = Cli({"check", "vcg-truth", "--grid", Path("second_price_grid.json"),
                     "--payment-rule", "first-price"});
  EXPECT_EQ(r.code, kExitViolation);
}

TEST(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"check"}).code, kExitUsage);
  EXPECT_EQ(Cli({"check", "bic"}).code, kExitUsage);
  EXPECT_EQ(Cli({"check", "bic", "--scenario", Path("two_type.json"), "--mode", "fast"}).code,
            kExitUsage);
  EXPECT_EQ(Cli({"check", "bic", "--scenario", Path("two_type.json"), "--budget", "lots"}).code,
            kExitUsage);
}

TEST(CliTest, BadFilesExitTwo) {
  const CliRun missing = Cli({"check", "bic", "--scenario", Path("absent.json")});
  EXPECT_EQ(missing.code, kExitUsage);
  EXPECT_NE(missing.err.find("ParseError"), std::string::npos) << missing.err;

  const std::string bad = ::testing::TempDir() + "/bad_prior.json";
  std::string text = ReadFile(Path("two_type.json"));
  text.replace(text.find("\"high\": \"1/2\""), 13, "\"high\": \"2/5\"");
  {
    std::ofstream f(bad);
    f << text;
  }
  const CliRun r = Cli({"validate", "--scenario", bad});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("ValidationError"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("prior"), std::string::npos) << r.err;
}

TEST(CliTest, BudgetExitsThree) {
  const CliRun r = Cli({"check", "dist-preserve", "--scenario", Path("big.json"),
                     "--budget", "10"});
  EXPECT_EQ(r.code, kExitBudget);
  EXPECT_NE(r.err.find("BudgetExceeded"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("mc"), std::string::npos) << r.err;
}

TEST(CliTest, MonteCarloIsEstimated) {
  const CliRun r = Cli({"check", "dist-preserve", "--scenario", Path("big.json"), "--mode",
                     "mc", "--samples", "2000", "--output", "json"});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["verdict"], "estimated");
  EXPECT_EQ(doc["mode"], "montecarlo");
  EXPECT_EQ(doc["stats"]["samples"], 2000);
}

TEST(CliTest, JobsDoNotChangeOutput) {
  const std::vector<std::string> args = {"check", "bic", "--scenario",
                                         Path("skewed_prior.json"), "--output", "json"};
  auto with = [&](const char* jobs) {
    std::vector<std::string> a = args;
    a.push_back("--jobs");
    a.push_back(jobs);
    return Cli(a).out;
  };
  EXPECT_EQ(with("1"), with("8"));
}

TEST(CliTest, JobsEnvironmentVariable) {
  {
    ScopedEnv env("MECHCHECK_JOBS", "3");
    const CliRun r = Cli({"check", "bic", "--scenario", Path("two_type.json")});
    EXPECT_EQ(r.code, kExitPass);
  }
  {
    ScopedEnv env("MECHCHECK_JOBS", "zero");
    const CliRun r = Cli({"check", "bic", "--scenario", Path("two_type.json")});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("MECHCHECK_JOBS"), std::string::npos) << r.err;
  }
}

TEST(CliTest, OutWritesFile) {
  const std::string path = ::testing::TempDir() + "/report.json";
  std::filesystem::remove(path);
  const CliRun r = Cli({"check", "stage-chain", "--scenario", Path("two_type.json"), "--output",
                     "json", "--out", path});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_EQ(ReadFile(path), ReadFile(Path("golden/two_type.stage_chain.json")));
}

TEST(CliTest, ValidateCorpus) {
  for (const char* s : {"two_type.json", "uniform_three_types.json", "skewed_prior.json",
                        "constant.json", "big.json"}) {
    EXPECT_EQ(Cli({"validate", "--scenario", Path(s)}).code, kExitPass) << s;
  }
  for (const char* g : {"second_price_grid.json", "first_price_grid.json"}) {
    EXPECT_EQ(Cli({"validate", "--grid", Path(g)}).code, kExitPass) << g;
  }
}

TEST(CliTest, EvalUtil) {
  const CliRun r = Cli({"eval", "util", "--scenario", Path("two_type.json"), "--true-type",
                     "high", "--report", "high"});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  EXPECT_NE(r.out.find("11/8"), std::string::npos) << r.out;
  const CliRun bad = Cli({"eval", "util", "--scenario", Path("two_type.json"), "--true-type",
                       "medium", "--report", "high"});
  EXPECT_EQ(bad.code, kExitUsage);
}

}  // namespace
}  // namespace mechcheck
