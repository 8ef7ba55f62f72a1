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

#ifndef MECHCHECK_CHECKER_H_
#define MECHCHECK_CHECKER_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mechcheck/matching.h"
#include "mechcheck/rational.h"
#include "mechcheck/rsm.h"
#include "mechcheck/scenario.h"
#include "mechcheck/vcg.h"

namespace mechcheck {

enum class Mode { kExact, kMonteCarlo };

struct CheckConfig {
  Mode mode = Mode::kExact;
  std::int64_t samples = 100000;  // Monte Carlo only
  std::uint64_t seed = 0;
  int jobs = 1;
  // Exact-mode ceiling on the number of distribution entries a check may
  // materialize; see the Estimate*Cost functions.
  std::int64_t budget = 10'000'000;
  double confidence = 0.99;
};

enum class Verdict { kPass, kFail, kEstimated };

std::string_view VerdictName(Verdict v);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// A concrete violation: margin = left - right < 0.
struct Witness {
  KeyValues inputs;
  Rational left;
  Rational right;
  Rational margin;
};

// A Monte Carlo point estimate with a radius valid at the configured
// confidence. The radius is rounded up to a rational.
struct Estimate {
  std::string label;
  Rational value;
  Rational radius;
};

struct CheckStats {
  std::int64_t instances = 0;
  std::int64_t violations = 0;
  std::int64_t samples = 0;
  double elapsed_seconds = 0.0;
  std::vector<Estimate> estimates;
  KeyValues notes;
};

struct CheckReport {
  std::string property;
  Verdict verdict = Verdict::kPass;
  std::vector<Witness> witnesses;  // at most kMaxWitnesses, in enumeration order
  CheckStats stats;
};

inline constexpr std::size_t kMaxWitnesses = 16;

// --- VCG grids -------------------------------------------------------------

// General VCG over a finite range: every bidder independently picks one of
// its candidate value vectors (indexed by range position). A deviation swaps
// one bidder's pick for another candidate.
struct ValueFamily {
  std::vector<std::string> range;
  std::vector<std::vector<std::vector<Rational>>> candidates;  // [bidder][pick][outcome]
};

// Single item among `bidders`; outcome k gives the item to bidder k and
// bidder k values winning at its pick from `values`, losing at 0.
ValueFamily SingleItemFamily(int bidders, const std::vector<Rational>& values);

// All size x size matrices with entries from `entries`; a deviation replaces
// one row by any row over `entries`.
struct MatrixFamily {
  int size = 0;
  std::vector<Rational> entries;
};

struct VcgGrid {
  std::vector<ValueFamily> value_families;
  std::vector<MatrixFamily> matrix_families;
  // Explicit matrices; deviations are the pairs in this list that agree
  // outside a single row.
  std::vector<WeightMatrix> matrices;
  PaymentRule rule = PaymentRule::kClarke;
};

using MatchingSolver = std::function<MatchingResult(const WeightMatrix&)>;

CheckReport CheckVcgTruth(const VcgGrid& grid, const CheckConfig& cfg);

CheckReport CheckVcgPerm(const VcgGrid& grid, const CheckConfig& cfg,
                         const MatchingSolver& solver = {});

// --- scenario checks -------------------------------------------------------

// Distribution entries touched by an exact scenario check, saturating.
std::int64_t EstimatePreservationCost(const Scenario& sc);
std::int64_t EstimateBicCost(const Scenario& sc);
std::int64_t EstimateGridCost(const VcgGrid& grid);

// bind(prior, Others(j, .)) == prior for every agent position j.
CheckReport CheckDistPreservation(const Scenario& sc, const CheckConfig& cfg);

// Which slot the third stage program reads after VCG. kFirst is a
// deliberately broken variant used to show the chain check has teeth.
enum class StageSlot { kUniform, kFirst };

// The four programs connecting Others to a plain prior draw, generalized
// to m replicas. All four are exact output laws for agent position `agent`.
ExactDist<AgentType> StageOne(const Rsm& rsm, int agent);
ExactDist<AgentType> StageTwo(const Rsm& rsm, int agent);
ExactDist<AgentType> StageThree(const Rsm& rsm, int agent,
                                StageSlot slot = StageSlot::kUniform);
ExactDist<AgentType> StageFour(const Scenario& sc);

CheckReport CheckStageChain(const Scenario& sc, const CheckConfig& cfg,
                            StageSlot stage_three_slot = StageSlot::kUniform);

// my_util(t, t) >= my_util(t, t') for every agent position and every pair of
// types in the prior's support.
CheckReport CheckBic(const Scenario& sc, const CheckConfig& cfg,
                     PaymentRule rule = PaymentRule::kClarke);

// Runs CheckBic over `grid` in order and stops at the first scenario that
// yields a witness. Passes (with the exhausted count in the notes) only if
// none does.
CheckReport SearchBicViolation(std::span<const Scenario> grid,
                               const CheckConfig& cfg, PaymentRule rule);

// --- Monte Carlo -----------------------------------------------------------

struct UtilityEstimate {
  Rational estimate;     // exact mean of the drawn samples
  double radius = 0.0;   // Hoeffding radius at cfg.confidence
  std::int64_t samples = 0;
};

// Sample-mean estimate of agent 1's expected utility for (truety, bid).
// Deterministic for a fixed seed.
UtilityEstimate EstimateUtility(const Scenario& sc, AgentType truety,
                                AgentType bid, const CheckConfig& cfg,
                                PaymentRule rule = PaymentRule::kClarke);

// Range of agent 1's per-sample utility used for the Hoeffding radius.
Rational UtilityRange(const Scenario& sc, PaymentRule rule);

double HoeffdingRadius(const Rational& range, std::int64_t samples,
                       double confidence);

}  // namespace mechcheck

#endif  // MECHCHECK_CHECKER_H_
