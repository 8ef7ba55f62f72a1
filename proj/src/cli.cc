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

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mechcheck/checker.h"
#include "mechcheck/error.h"
#include "mechcheck/report.h"
#include "mechcheck/scenario_file.h"

namespace mechcheck {
namespace {

struct Options {
  std::string scenario;
  std::string grid;
  std::string mode = "exact";
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string output = "text";
  std::string out;
  std::string budget = "10000000";
  std::string payment_rule = "clarke";
  double confidence = 0.99;
  std::string true_type;
  std::string report;
  int agent = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void AddCommonFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--scenario", o.scenario, "Scenario file (JSON)");
  cmd->add_option("--mode", o.mode, "exact or mc (alias montecarlo)")
      ->check(CLI::IsMember({"exact", "mc", "montecarlo"}));
  cmd->add_option("--samples", o.samples, "Monte Carlo samples")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Monte Carlo seed");
  cmd->add_option("--jobs", o.jobs, "Worker threads (MECHCHECK_JOBS overrides)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--output", o.output, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", o.out, "Write the report to this path");
  cmd->add_option("--budget", o.budget, "Exact-mode entry budget, e.g. 1e7");
  cmd->add_option("--payment-rule", o.payment_rule, "clarke or first-price")
      ->check(CLI::IsMember({"clarke", "first-price"}));
  cmd->add_option("--confidence", o.confidence, "Monte Carlo confidence")
      ->check(CLI::Range(0.5, 0.999999));
}

std::int64_t ParseBudget(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !(v >= 0) || v > 9e18 ||
      v != std::floor(v)) {
    throw UsageError("--budget: expected a non-negative integer, got \"" + text + "\"");
  }
  return static_cast<std::int64_t>(v);
}

CheckConfig MakeConfig(const Options& o) {
  CheckConfig cfg;
  cfg.mode = o.mode == "exact" ? Mode::kExact : Mode::kMonteCarlo;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.jobs = o.jobs;
  if (const char* env = std::getenv("MECHCHECK_JOBS"); env != nullptr && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024) {
      throw UsageError(std::string("MECHCHECK_JOBS: expected a positive integer, got \"") +
                       env + "\"");
    }
    cfg.jobs = static_cast<int>(v);
  }
  cfg.budget = ParseBudget(o.budget);
  cfg.confidence = o.confidence;
  return cfg;
}

// Entries 0..3 single-item values and {0, 1/2, 1, 2} matrices.
VcgGrid DefaultGrid() {
  VcgGrid grid;
  const std::vector<Rational> values = {0, 1, 2, 3};
  for (int bidders : {2, 3}) grid.value_families.push_back(SingleItemFamily(bidders, values));
  const std::vector<Rational> entries = {0, Rational(1, 2), 1, 2};
  for (int size : {2, 3}) grid.matrix_families.push_back(MatrixFamily{size, entries});
  return grid;
}

void Emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw UsageError("--out: cannot write " + o.out);
  file << text;
}

std::string RequireScenarioPath(const Options& o) {
  if (o.scenario.empty()) throw UsageError("--scenario is required for this command");
  return o.scenario;
}

int RunCheck(const std::string& property, const Options& o, std::ostream& out) {
  const CheckConfig cfg = MakeConfig(o);
  const PaymentRule rule = ParsePaymentRule(o.payment_rule);
  ReportHeader header;
  header.mode = cfg.mode == Mode::kExact ? "exact" : "montecarlo";
  CheckReport report;
  if (property == "vcg-truth" || property == "vcg-perm") {
    const std::string path = !o.grid.empty() ? o.grid : o.scenario;
    VcgGrid grid;
    if (path.empty()) {
      grid = DefaultGrid();
      header.scenario_digest = "builtin";
    } else {
      const std::string text = ReadFile(path);
      grid = ParseGridText(text);
      header.scenario_digest = DocumentDigest(text);
    }
    if (o.payment_rule != "clarke") grid.rule = rule;
    report = property == "vcg-truth" ? CheckVcgTruth(grid, cfg) : CheckVcgPerm(grid, cfg);
  } else {
    const std::string text = ReadFile(RequireScenarioPath(o));
    const Scenario sc = ParseScenarioText(text);
    header.scenario_digest = DocumentDigest(text);
    if (property == "dist-preserve") {
      report = CheckDistPreservation(sc, cfg);
    } else if (property == "stage-chain") {
      report = CheckStageChain(sc, cfg);
    } else {
      report = CheckBic(sc, cfg, rule);
    }
  }
  Emit(o,
       o.output == "json" ? ReportToJson(header, report) : ReportToText(header, report),
       out);
  return report.verdict == Verdict::kFail ? kExitViolation : kExitPass;
}

AgentType TypeByLabel(const Scenario& sc, const std::string& label, const char* flag) {
  for (AgentType t : sc.Types()) {
    if (sc.TypeLabel(t) == label) return t;
  }
  throw UsageError(std::string(flag) + ": unknown type \"" + label + "\"");
}

int RunEvalUtil(const Options& o, std::ostream& out) {
  const CheckConfig cfg = MakeConfig(o);
  const PaymentRule rule = ParsePaymentRule(o.payment_rule);
  const std::string text = ReadFile(RequireScenarioPath(o));
  const Scenario base = ParseScenarioText(text);
  if (o.agent < 1 || o.agent > base.agents()) {
    throw UsageError("--agent: expected 1.." + std::to_string(base.agents()));
  }
  const Scenario sc = base.RotateToFront(o.agent);
  const AgentType truety = TypeByLabel(sc, o.true_type, "--true-type");
  const AgentType bid = TypeByLabel(sc, o.report, "--report");

  nlohmann::ordered_json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["property"] = "util";
  doc["mode"] = o.mode == "exact" ? "exact" : "montecarlo";
  doc["scenario_digest"] = DocumentDigest(text);
  doc["agent"] = o.agent;
  doc["true_type"] = o.true_type;
  doc["report"] = o.report;
  std::ostringstream line;
  line << "my_util(" << o.true_type << ", " << o.report << ") for agent " << o.agent
       << " = ";
  if (cfg.mode == Mode::kExact) {
    if (EstimatePreservationCost(sc) > cfg.budget) {
      throw MechError(ErrorKind::kBudgetExceeded,
                      "eval util: estimated " + std::to_string(EstimatePreservationCost(sc)) +
                          " entries exceed the budget of " + std::to_string(cfg.budget) +
                          "; use --mode mc or raise --budget");
    }
    const Rational value = Rsm(sc, rule).MyUtil(truety, bid);
    doc["value"] = value.ToString();
    line << value << "\n";
  } else {
    const UtilityEstimate e = EstimateUtility(sc, truety, bid, cfg, rule);
    const Rational radius = Rational::CeilTo(e.radius, 1'000'000'000);
    doc["value"] = e.estimate.ToString();
    doc["radius"] = radius.ToString();
    doc["samples"] = e.samples;
    line << e.estimate << " +/- " << radius << " (" << e.samples << " samples)\n";
  }
  Emit(o, o.output == "json" ? doc.dump(2) + "\n" : line.str(), out);
  return kExitPass;
}

int RunValidate(const Options& o, std::ostream& out) {
  std::ostringstream line;
  if (!o.grid.empty()) {
    const VcgGrid grid = ParseGridFile(o.grid);
    line << "ok: grid with " << grid.value_families.size() << " value families, "
         << grid.matrix_families.size() << " matrix families, " << grid.matrices.size()
         << " matrices\n";
  } else {
    const Scenario sc = ParseScenarioFile(RequireScenarioPath(o));
    line << "ok: " << sc.agents() << " agents, " << sc.replicas() << " replicas, "
         << sc.num_types() << " types, " << sc.num_outcomes() << " outcomes\n";
  }
  out << line.str();
  return kExitPass;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Options o;
  CLI::App app{"Exact and sampled incentive checks for VCG and the RSM reduction",
               "mechcheck"};
  app.require_subcommand(1);
  CLI::App* check = app.add_subcommand("check", "Check a property");
  check->require_subcommand(1);
  std::string property;
  for (const char* name : {"vcg-truth", "vcg-perm", "dist-preserve", "stage-chain", "bic"}) {
    CLI::App* cmd = check->add_subcommand(name, std::string("Check ") + name);
    AddCommonFlags(cmd, o);
    cmd->add_option("--grid", o.grid, "VCG grid file (JSON)");
    cmd->callback([&property, name] { property = name; });
  }
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a quantity");
  eval->require_subcommand(1);
  CLI::App* util = eval->add_subcommand("util", "Expected utility of an agent");
  AddCommonFlags(util, o);
  util->add_option("--true-type", o.true_type, "True type label")->required();
  util->add_option("--report", o.report, "Reported type label")->required();
  util->add_option("--agent", o.agent, "Agent position (1-based)");
  CLI::App* validate = app.add_subcommand("validate", "Parse and validate a file");
  validate->add_option("--scenario", o.scenario, "Scenario file (JSON)");
  validate->add_option("--grid", o.grid, "VCG grid file (JSON)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (!property.empty()) return RunCheck(property, o, out);
    if (util->parsed()) return RunEvalUtil(o, out);
    if (validate->parsed()) return RunValidate(o, out);
    err << "error: no command\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MechError& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::kBudgetExceeded ? kExitBudget : kExitUsage;
  }
}

}  // namespace mechcheck
