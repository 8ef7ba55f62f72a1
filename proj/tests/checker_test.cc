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

#include "mechcheck/checker.h"

#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "mechcheck/error.h"
#include "mechcheck/report.h"
#include "test_support.h"

namespace mechcheck {
namespace {

using ::mechcheck::testing::AlgorithmKind;
using ::mechcheck::testing::GridScenario;
using ::mechcheck::testing::PriorKind;
using ::mechcheck::testing::RandomMatrix;
using ::mechcheck::testing::SingleItemScenario;
using ::mechcheck::testing::SlotSensitiveScenario;
using ::mechcheck::testing::TwoTypeScenario;

std::int64_t Pow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::string Input(const Witness& w, const std::string& key) {
  for (const auto& [k, v] : w.inputs) {
    if (k == key) return v;
  }
  return "";
}

std::string Note(const CheckReport& r, const std::string& key) {
  for (const auto& [k, v] : r.stats.notes) {
    if (k == key) return v;
  }
  return "";
}

void ExpectWellFormed(const CheckReport& r) {
  EXPECT_EQ(r.verdict == Verdict::kFail, !r.witnesses.empty());
  EXPECT_LE(r.witnesses.size(), kMaxWitnesses);
  EXPECT_GE(r.stats.violations, static_cast<std::int64_t>(r.witnesses.size()));
  for (const Witness& w : r.witnesses) {
    EXPECT_LT(w.margin, Rational(0));
    if (r.property != "vcg-perm" && r.property != "dist-preserve" &&
        r.property != "stage-chain") {
      EXPECT_EQ(w.margin, w.left - w.right);
    }
  }
}

VcgGrid SecondPriceGrid() {
  VcgGrid grid;
  const std::vector<Rational> values = {0, 1, 2, 3};
  grid.value_families.push_back(SingleItemFamily(2, values));
  grid.value_families.push_back(SingleItemFamily(3, values));
  return grid;
}

TEST(CheckVcgTruthTest, SecondPricePasses) {
  const CheckReport r = CheckVcgTruth(SecondPriceGrid(), CheckConfig{});
  EXPECT_EQ(r.verdict, Verdict::kPass);
  EXPECT_TRUE(r.witnesses.empty());
  // v^k profiles x k deviators x v deviations.
  EXPECT_EQ(r.stats.instances, Pow(4, 2) * 2 * 4 + Pow(4, 3) * 3 * 4);
  ExpectWellFormed(r);
}

TEST(CheckVcgTruthTest, FirstPriceFailsWithReproducibleWitness) {
  VcgGrid grid;
  grid.value_families.push_back(SingleItemFamily(2, {1, 2}));
  grid.rule = PaymentRule::kFirstPrice;
  const CheckReport r = CheckVcgTruth(grid, CheckConfig{});
  ASSERT_EQ(r.verdict, Verdict::kFail);
  ExpectWellFormed(r);
  bool found = false;
  for (const Witness& w : r.witnesses) {
    if (Input(w, "deviator") == "1" && Input(w, "true_values") == "[[2,0],[0,1]]" &&
        Input(w, "deviation") == "[1,0]") {
      found = true;
      EXPECT_EQ(w.left, Rational(0));
      EXPECT_EQ(w.right, Rational(1));
      EXPECT_EQ(w.margin, Rational(-1));
    }
  }
  EXPECT_TRUE(found);

  // Re-evaluate the witness through the public API.
  auto item = [](int k, Rational v) -> ValueFunction {
    return [k, v](Outcome o) { return o.id == k ? v : Rational(0); };
  };
  const std::vector<Outcome> range = {Outcome{0}, Outcome{1}};
  const std::vector<ValueFunction> truth = {item(0, 2), item(1, 1)};
  const std::vector<ValueFunction> lie = {item(0, 1), item(1, 1)};
  const VcgOutcome a = VcgGeneral(truth, range, PaymentRule::kFirstPrice);
  const VcgOutcome b = VcgGeneral(lie, range, PaymentRule::kFirstPrice);
  EXPECT_EQ(Rational(2) * Rational(a.outcome.id == 0) - a.prices[0], Rational(0));
  EXPECT_EQ(Rational(2) * Rational(b.outcome.id == 0) - b.prices[0], Rational(1));
}

TEST(CheckVcgTruthTest, SingleBuyerMatrixPasses) {
  VcgGrid grid;
  grid.matrices.push_back({{Rational(7, 2)}});
  const CheckReport r = CheckVcgTruth(grid, CheckConfig{});
  EXPECT_EQ(r.verdict, Verdict::kPass);
  EXPECT_EQ(r.stats.instances, 1);
}

TEST(CheckVcgTruthTest, MatrixFamilyInstanceCount) {
  VcgGrid grid;
  grid.matrix_families.push_back(MatrixFamily{2, {0, Rational(1, 2), 1, 2}});
  const CheckReport r = CheckVcgTruth(grid, CheckConfig{});
  EXPECT_EQ(r.verdict, Verdict::kPass);
  // e^(m^2) matrices x m deviators x e^m deviation rows.
  EXPECT_EQ(r.stats.instances, Pow(4, 4) * 2 * Pow(4, 2));
}

TEST(CheckVcgTruthTest, FirstPriceMatrixFamilyFails) {
  VcgGrid grid;
  grid.matrix_families.push_back(MatrixFamily{2, {0, 1, 2}});
  grid.rule = PaymentRule::kFirstPrice;
  const CheckReport r = CheckVcgTruth(grid, CheckConfig{});
  ASSERT_EQ(r.verdict, Verdict::kFail);
  ExpectWellFormed(r);
}

TEST(CheckVcgTruthTest, ExplicitMatricesPairByRow) {
  VcgGrid grid;
  grid.matrices = {{{2, 1}, {2, 1}}, {{1, 1}, {2, 1}}, {{2, 1}, {1, 2}}};
  const CheckReport pass = CheckVcgTruth(grid, CheckConfig{});
  EXPECT_EQ(pass.verdict, Verdict::kPass);
  EXPECT_GT(pass.stats.instances, 0);
  grid.rule = PaymentRule::kFirstPrice;
  const CheckReport fail = CheckVcgTruth(grid, CheckConfig{});
  EXPECT_EQ(fail.verdict, Verdict::kFail);
  ExpectWellFormed(fail);
}

TEST(CheckVcgTruthTest, EmptyGridPassesAndIsFlagged) {
  const CheckReport r = CheckVcgTruth(VcgGrid{}, CheckConfig{});
  EXPECT_EQ(r.verdict, Verdict::kPass);
  EXPECT_EQ(r.stats.instances, 0);
  EXPECT_EQ(Note(r, "empty_grid"), "true");
}

TEST(CheckVcgTruthTest, MonteCarloIsEstimated) {
  CheckConfig cfg;
  cfg.mode = Mode::kMonteCarlo;
  cfg.samples = 2000;
  VcgGrid grid = SecondPriceGrid();
  grid.matrix_families.push_back(MatrixFamily{3, {0, Rational(1, 2), 1, 2}});
  const CheckReport r = CheckVcgTruth(grid, cfg);
  EXPECT_EQ(r.verdict, Verdict::kEstimated);
  EXPECT_EQ(r.stats.samples, 2000);
  grid.rule = PaymentRule::kFirstPrice;
  EXPECT_EQ(CheckVcgTruth(grid, cfg).verdict, Verdict::kFail);
}

TEST(CheckVcgTruthTest, JobsDoNotChangeReport) {
  VcgGrid grid = SecondPriceGrid();
  grid.matrix_families.push_back(MatrixFamily{2, {0, 1, 2}});
  grid.rule = PaymentRule::kFirstPrice;
  CheckConfig one, four;
  four.jobs = 4;
  EXPECT_EQ(ReportToJson({}, CheckVcgTruth(grid, one)),
            ReportToJson({}, CheckVcgTruth(grid, four)));
}

TEST(CheckVcgTruthTest, BudgetExceeded) {
  CheckConfig cfg;
  cfg.budget = 10;
  try {
    CheckVcgTruth(SecondPriceGrid(), cfg);
    FAIL() << "expected MechError";
  } catch (const MechError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBudgetExceeded);
  }
}

TEST(CheckVcgPermTest, SquareGridPasses) {
  VcgGrid grid;
  grid.matrix_families.push_back(MatrixFamily{2, {0, 1, 2}});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) grid.matrices.push_back(RandomMatrix(rng, 3, 30, 7));
  const CheckReport r = CheckVcgPerm(grid, CheckConfig{});
  EXPECT_EQ(r.verdict, Verdict::kPass);
  EXPECT_EQ(r.stats.instances, Pow(3, 4) + 1000);
}

TEST(CheckVcgPermTest, CorruptedSolverFails) {
  VcgGrid grid;
  grid.matrices.push_back({{1, 2}, {3, 4}});
  const MatchingSolver broken = [](const WeightMatrix&) {
    return MatchingResult{{1, 1}, {0, 0}};
  };
  const CheckReport r = CheckVcgPerm(grid, CheckConfig{}, broken);
  ASSERT_EQ(r.verdict, Verdict::kFail);
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_EQ(Input(r.witnesses[0], "alloc"), "[1,1]");
  ExpectWellFormed(r);
}

// Closed form |supp|^(2m-1) * m coin outcomes per agent and per type.
std::int64_t CoinCount(const Scenario& sc) {
  return Pow(static_cast<std::int64_t>(sc.prior().size()), 2 * sc.replicas() - 1) *
         sc.replicas();
}

TEST(CheckDistPreservationTest, SingleReplicaPasses) {
  const Scenario sc = GridScenario(3, 1, 2, PriorKind::kSkewed, AlgorithmKind::kWelfareMax);
  const CheckReport r = CheckDistPreservation(sc, CheckConfig{});
  EXPECT_EQ(r.verdict, Verdict::kPass);
  EXPECT_EQ(r.stats.instances, sc.agents() * 2 * CoinCount(sc));
}

TEST(CheckDistPreservationTest, TwoTypeUniformPasses) {
  const CheckReport r = CheckDistPreservation(TwoTypeScenario(), CheckConfig{});
  EXPECT_EQ(r.verdict, Verdict::kPass);
  EXPECT_EQ(r.stats.instances, 2 * 2 * 16);
}

TEST(CheckDistPreservationTest, SkewedPriorPasses) {
  const Scenario sc = SingleItemScenario(
      2, 2, {"a", "b"}, {1, 2},
      ExactDist<AgentType>::FromEntries(
          {{AgentType{0}, Rational(1, 3)}, {AgentType{1}, Rational(2, 3)}}));
  EXPECT_EQ(CheckDistPreservation(sc, CheckConfig{}).verdict, Verdict::kPass);
}

TEST(CheckDistPreservationTest, BudgetExceeded) {
  const Scenario sc = GridScenario(3, 7, 3, PriorKind::kUniform, AlgorithmKind::kWelfareMax);
  EXPECT_GT(EstimatePreservationCost(sc), CheckConfig{}.budget);
  EXPECT_THROW(CheckDistPreservation(sc, CheckConfig{}), MechError);
}

TEST(CheckDistPreservationTest, MonteCarloIsEstimated) {
  CheckConfig cfg;
  cfg.mode = Mode::kMonteCarlo;
  cfg.samples = 20000;
  const Scenario sc = GridScenario(3, 4, 3, PriorKind::kUniform, AlgorithmKind::kWelfareMax);
  const CheckReport r = CheckDistPreservation(sc, cfg);
  EXPECT_EQ(r.verdict, Verdict::kEstimated);
  EXPECT_EQ(r.stats.estimates.size(), 3u);
  for (const Estimate& e : r.stats.estimates) EXPECT_LE(e.value, e.radius);
}

TEST(StageChainTest, TwoTypeStagesAllEqualPrior) {
  const Scenario sc = TwoTypeScenario();
  const Rsm rsm(sc);
  const auto half = sc.prior();
  EXPECT_EQ(half.Mass(AgentType{0}), Rational(1, 2));
  for (int agent = 1; agent <= 2; ++agent) {
    EXPECT_TRUE(DistEqual(StageOne(rsm, agent), half));
    EXPECT_TRUE(DistEqual(StageTwo(rsm, agent), half));
    EXPECT_TRUE(DistEqual(StageThree(rsm, agent), half));
  }
  EXPECT_TRUE(DistEqual(StageFour(sc), half));
  const CheckReport r = CheckStageChain(sc, CheckConfig{});
  EXPECT_EQ(r.verdict, Verdict::kPass);
  // Three coin-driven stages plus |supp|^m * m for stage four, per agent.
  EXPECT_EQ(r.stats.instances, 2 * (3 * 2 * CoinCount(sc) + 4 * 2));
}

TEST(StageChainTest, StageFourIsPriorForAnyReplicaCount) {
  for (int m = 1; m <= 4; ++m) {
    const Scenario sc = GridScenario(3, m, 1, PriorKind::kSkewed, AlgorithmKind::kConstant);
    EXPECT_TRUE(DistEqual(StageFour(sc), sc.prior()));
  }
}

TEST(StageChainTest, SlotOneStageThreeIsCaught) {
  const Scenario sc = SlotSensitiveScenario();
  const Rsm rsm(sc);
  const auto two = StageTwo(rsm, 1);
  const auto broken = StageThree(rsm, 1, StageSlot::kFirst);
  ASSERT_FALSE(DistEqual(two, broken));
  EXPECT_EQ(broken.Mass(AgentType{0}), Rational(83, 243));
  EXPECT_EQ(broken.Mass(AgentType{2}), Rational(77, 243));

  EXPECT_EQ(CheckStageChain(sc, CheckConfig{}).verdict, Verdict::kPass);
  const CheckReport r = CheckStageChain(sc, CheckConfig{}, StageSlot::kFirst);
  ASSERT_EQ(r.verdict, Verdict::kFail);
  ExpectWellFormed(r);
  EXPECT_EQ(Input(r.witnesses[0], "link"), "stage2=stage3");
}

TEST(StageChainTest, MonteCarloDetectsBrokenStage) {
  CheckConfig cfg;
  cfg.mode = Mode::kMonteCarlo;
  cfg.samples = 20000;
  const Scenario sc = GridScenario(2, 2, 2, PriorKind::kUniform, AlgorithmKind::kWelfareMax);
  EXPECT_EQ(CheckStageChain(sc, cfg).verdict, Verdict::kEstimated);
}

TEST(CheckBicTest, TwoTypeScenarioPasses) {
  const CheckReport r = CheckBic(TwoTypeScenario(), CheckConfig{});
  EXPECT_EQ(r.verdict, Verdict::kPass);
  EXPECT_EQ(Note(r, "min_margin"), "0");
  // Agents x |supp|^2 pairs x coin outcomes.
  EXPECT_EQ(r.stats.instances, 2 * 4 * 16);
}

TEST(CheckBicTest, DiagonalMarginsAreZero) {
  const Scenario sc = GridScenario(3, 2, 2, PriorKind::kSkewed, AlgorithmKind::kWelfareMax);
  for (int j = 1; j <= 2; ++j) {
    const Rsm rsm(RotateToFront(sc, j));
    for (AgentType t : sc.prior().Support()) {
      EXPECT_EQ(rsm.MyUtil(t, t) - rsm.MyUtil(t, t), Rational(0));
      for (AgentType bid : sc.prior().Support()) {
        EXPECT_GE(rsm.MyUtil(t, t), rsm.MyUtil(t, bid));
      }
    }
  }
}

TEST(CheckBicTest, FirstPriceFailsWithReproducibleWitness) {
  const Scenario sc = TwoTypeScenario();
  const CheckReport r = CheckBic(sc, CheckConfig{}, PaymentRule::kFirstPrice);
  ASSERT_EQ(r.verdict, Verdict::kFail);
  ExpectWellFormed(r);
  for (const Witness& w : r.witnesses) {
    const int agent = std::stoi(Input(w, "agent"));
    const Rsm rsm(RotateToFront(sc, agent), PaymentRule::kFirstPrice);
    AgentType t{}, bid{};
    for (AgentType x : sc.Types()) {
      if (sc.TypeLabel(x) == Input(w, "true_type")) t = x;
      if (sc.TypeLabel(x) == Input(w, "report")) bid = x;
    }
    EXPECT_EQ(rsm.MyUtil(t, t), w.left);
    EXPECT_EQ(rsm.MyUtil(t, bid), w.right);
    EXPECT_LT(rsm.MyUtil(t, t) - rsm.MyUtil(t, bid), Rational(0));
  }
}

TEST(CheckBicTest, SearchStopsAtFirstViolation) {
  // A single-type prior leaves no deviation to find.
  const std::vector<Scenario> grid = {
      SingleItemScenario(2, 2, {"only"}, {1}, Point(AgentType{0})),
      TwoTypeScenario()};
  const CheckReport r = SearchBicViolation(grid, CheckConfig{}, PaymentRule::kFirstPrice);
  EXPECT_EQ(r.verdict, Verdict::kFail);
  EXPECT_EQ(Note(r, "scenario_index"), "1");
  const CheckReport clean = SearchBicViolation(grid, CheckConfig{}, PaymentRule::kClarke);
  EXPECT_EQ(clean.verdict, Verdict::kPass);
  EXPECT_EQ(Note(clean, "exhausted"), "true");
}

TEST(CheckBicTest, JobsDoNotChangeReport) {
  const Scenario sc = GridScenario(3, 2, 3, PriorKind::kUniform, AlgorithmKind::kWelfareMax);
  CheckConfig one, four;
  four.jobs = 4;
  EXPECT_EQ(ReportToJson({}, CheckBic(sc, one, PaymentRule::kFirstPrice)),
            ReportToJson({}, CheckBic(sc, four, PaymentRule::kFirstPrice)));
  EXPECT_EQ(ReportToJson({}, CheckDistPreservation(sc, one)),
            ReportToJson({}, CheckDistPreservation(sc, four)));
  EXPECT_EQ(ReportToJson({}, CheckStageChain(sc, one)),
            ReportToJson({}, CheckStageChain(sc, four)));
}

TEST(CheckBicTest, BudgetExceeded) {
  CheckConfig cfg;
  cfg.budget = 10;
  try {
    CheckBic(TwoTypeScenario(), cfg);
    FAIL() << "expected MechError";
  } catch (const MechError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBudgetExceeded);
  }
  cfg.mode = Mode::kMonteCarlo;
  cfg.samples = 100;
  EXPECT_NO_THROW(CheckBic(TwoTypeScenario(), cfg));
}

TEST(CheckBicTest, MonteCarloEstimatesMargins) {
  CheckConfig cfg;
  cfg.mode = Mode::kMonteCarlo;
  cfg.samples = 20000;
  const CheckReport r = CheckBic(TwoTypeScenario(), cfg);
  EXPECT_EQ(r.verdict, Verdict::kEstimated);
  EXPECT_EQ(r.stats.estimates.size(), 8u);
  EXPECT_EQ(r.stats.samples, 20000);
}

}  // namespace
}  // namespace mechcheck
