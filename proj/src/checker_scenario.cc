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

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "checker_common.h"
#include "mechcheck/checker.h"
#include "mechcheck/error.h"
#include "parallel.h"
#include "sampling.h"

namespace mechcheck {

using internal::Tally;

namespace {

std::int64_t SupportSize(const Scenario& sc) {
  return static_cast<std::int64_t>(sc.prior().size());
}

// |supp|^(2m) * m: inputs t times coin outcomes for one agent position.
std::int64_t EnumeratedPerAgent(const Scenario& sc) {
  return internal::SaturatingMul(
      internal::SaturatingPow(SupportSize(sc), 2 * sc.replicas()),
      sc.replicas());
}

// Appends one witness per type on which two laws disagree.
void CompareLaws(const Scenario& sc, const ExactDist<AgentType>& left,
                 const ExactDist<AgentType>& right, KeyValues context,
                 Tally& t) {
  for (AgentType type : sc.Types()) {
    const Rational l = left.Mass(type);
    const Rational r = right.Mass(type);
    if (l == r) continue;
    KeyValues inputs = context;
    inputs.emplace_back("type", sc.TypeLabel(type));
    t.Add(Witness{std::move(inputs), l, r, -Abs(l - r)});
  }
}

Rational TotalVariation(const Scenario& sc, const std::vector<std::int64_t>& counts,
                        std::int64_t samples) {
  Rational tv;
  for (AgentType type : sc.Types()) {
    tv += Abs(Rational(counts[type.id], samples) - sc.prior().Mass(type));
  }
  return tv / Rational(2);
}

// TV radius for a k-category histogram: a per-category Hoeffding bound at
// delta/k, summed and halved.
double TvTolerance(int categories, std::int64_t samples, double confidence) {
  const double delta = 1.0 - confidence;
  const double eps = std::sqrt(std::log(2.0 * categories / delta) /
                               (2.0 * static_cast<double>(samples)));
  return 0.5 * categories * eps;
}

constexpr long kRadiusDenominator = 1'000'000'000;

// Records an empirical law against the prior; a witness if the distance
// exceeds the tolerance.
void JudgeHistogram(const Scenario& sc, const std::vector<std::int64_t>& counts,
                    const CheckConfig& cfg, const std::string& label,
                    KeyValues context, CheckReport& report, Tally& t) {
  const Rational tv = TotalVariation(sc, counts, cfg.samples);
  const Rational tol = Rational::CeilTo(
      TvTolerance(sc.num_types(), cfg.samples, cfg.confidence), kRadiusDenominator);
  report.stats.estimates.push_back(Estimate{label, tv, tol});
  ++t.instances;
  if (tol < tv) t.Add(Witness{std::move(context), tol, tv, tol - tv});
}

void FinishMonteCarlo(const CheckConfig& cfg, CheckReport& report,
                      const std::vector<Tally>& tallies) {
  const auto estimates = std::move(report.stats.estimates);
  internal::MergeTallies(tallies, report);
  report.stats.estimates = estimates;
  report.stats.samples = cfg.samples;
  if (report.verdict == Verdict::kPass) report.verdict = Verdict::kEstimated;
}

std::vector<AgentType> Support(const Scenario& sc) { return sc.prior().Support(); }

}  // namespace

std::int64_t EstimatePreservationCost(const Scenario& sc) {
  return internal::SaturatingMul(
      internal::SaturatingMul(
          internal::SaturatingPow(SupportSize(sc), 2 * sc.replicas() - 1),
          sc.replicas()),
      ProfileCount(sc.agents() - 1, sc.num_types()));
}

std::int64_t EstimateBicCost(const Scenario& sc) {
  return internal::SaturatingMul(EstimatePreservationCost(sc),
                                 internal::SaturatingPow(SupportSize(sc), 2));
}

CheckReport CheckDistPreservation(const Scenario& sc, const CheckConfig& cfg) {
  const internal::Stopwatch clock;
  CheckReport report;
  report.property = "dist-preserve";
  internal::RequireBudget(EstimatePreservationCost(sc), cfg, "dist-preserve");
  const Rsm rsm(sc);
  const int n = sc.agents();

  if (cfg.mode == Mode::kExact) {
    const auto tallies = internal::ParallelMap(cfg.jobs, n, [&](std::size_t j) {
      Tally t;
      const int agent = static_cast<int>(j) + 1;
      t.instances = EnumeratedPerAgent(sc);
      CompareLaws(sc, rsm.SurrogateLaw(agent), sc.prior(),
                  {{"agent", std::to_string(agent)}}, t);
      return t;
    });
    internal::MergeTallies(tallies, report);
  } else {
    std::vector<Tally> tallies(n);
    for (int agent = 1; agent <= n; ++agent) {
      internal::Rng rng(internal::MixSeed(cfg.seed, agent));
      internal::CoinSampler coins(sc);
      internal::DetMemo memo(rsm);
      std::vector<std::int64_t> counts(sc.num_types(), 0);
      for (std::int64_t s = 0; s < cfg.samples; ++s) {
        const AgentType t = coins.Type(rng);
        ++counts[memo.result(memo.Get(agent, coins.Draw(rng), t)).surrogate.id];
      }
      JudgeHistogram(sc, counts, cfg, "agent " + std::to_string(agent) + " TV",
                     {{"agent", std::to_string(agent)}}, report, tallies[agent - 1]);
    }
    FinishMonteCarlo(cfg, report, tallies);
  }
  report.stats.elapsed_seconds = clock.Seconds();
  return report;
}

ExactDist<AgentType> StageOne(const Rsm& rsm, int agent) {
  return Bind(rsm.scenario().prior(),
              [&](const AgentType& ot) { return rsm.Others(agent, ot); });
}

ExactDist<AgentType> StageTwo(const Rsm& rsm, int agent) {
  const Scenario& sc = rsm.scenario();
  const int m = sc.replicas();
  const auto rests = Power(sc.prior(), m - 1);
  const auto surs = Power(sc.prior(), m);
  const Rational slot_mass(1, m);
  std::vector<ExactDist<AgentType>::Entry> out;
  for (const auto& [ot, po] : sc.prior().entries()) {
    for (const auto& [rest, pr] : rests.entries()) {
      for (const auto& [s, ps] : surs.entries()) {
        const Rational mass = po * pr * ps * slot_mass;
        for (int i = 1; i <= m; ++i) {
          const Profile buyers = InsertAt(rest, i, ot);
          const MatchingResult vcg =
              VcgMatching(rsm.Weights(agent, buyers, s), rsm.rule());
          out.emplace_back(s[vcg.alloc[i - 1] - 1], mass);
        }
      }
    }
  }
  return ExactDist<AgentType>::FromNormalized(std::move(out));
}

ExactDist<AgentType> StageThree(const Rsm& rsm, int agent, StageSlot slot) {
  const Scenario& sc = rsm.scenario();
  const int m = sc.replicas();
  const auto rests = Power(sc.prior(), m - 1);
  const auto surs = Power(sc.prior(), m);
  const Rational slot_mass(1, m);
  std::vector<ExactDist<AgentType>::Entry> out;
  for (const auto& [ot, po] : sc.prior().entries()) {
    for (const auto& [rest, pr] : rests.entries()) {
      const Profile buyers = InsertAt(rest, 1, ot);
      for (const auto& [s, ps] : surs.entries()) {
        const Rational mass = po * pr * ps;
        const MatchingResult vcg =
            VcgMatching(rsm.Weights(agent, buyers, s), rsm.rule());
        if (slot == StageSlot::kFirst) {
          out.emplace_back(s[vcg.alloc[0] - 1], mass);
          continue;
        }
        for (int i = 1; i <= m; ++i) {
          out.emplace_back(s[vcg.alloc[i - 1] - 1], mass * slot_mass);
        }
      }
    }
  }
  return ExactDist<AgentType>::FromNormalized(std::move(out));
}

ExactDist<AgentType> StageFour(const Scenario& sc) {
  const int m = sc.replicas();
  std::vector<int> slots;
  for (int i = 0; i < m; ++i) slots.push_back(i);
  const auto slot_law = Uniform(slots);
  return Bind(Power(sc.prior(), m), [&](const std::vector<AgentType>& s) {
    return Map(slot_law, [&](const int& i) { return s[i]; });
  });
}

namespace {

void SampleStageChain(const Scenario& sc, const Rsm& rsm, int agent,
                      StageSlot stage_three_slot, const CheckConfig& cfg,
                      CheckReport& report, Tally& t) {
  const int m = sc.replicas();
  internal::DetMemo memo(rsm);
  std::map<std::vector<int>, std::vector<int>> matches;
  auto match = [&](const Profile& buyers, const std::vector<AgentType>& s) {
    std::vector<int> key;
    for (AgentType b : buyers) key.push_back(b.id);
    for (AgentType g : s) key.push_back(g.id);
    auto it = matches.find(key);
    if (it == matches.end()) {
      it = matches.emplace(key, VcgMatching(rsm.Weights(agent, buyers, s), rsm.rule()).alloc)
               .first;
    }
    return it->second;
  };
  for (int stage = 1; stage <= 4; ++stage) {
    internal::Rng rng(internal::MixSeed(cfg.seed, agent * 8 + stage));
    internal::CoinSampler coins(sc);
    std::vector<std::int64_t> counts(sc.num_types(), 0);
    for (std::int64_t n = 0; n < cfg.samples; ++n) {
      const AgentType ot = coins.Type(rng);
      const Coins c = coins.Draw(rng);
      AgentType out;
      switch (stage) {
        case 1:
          out = memo.result(memo.Get(agent, c, ot)).surrogate;
          break;
        case 2: {
          const auto alloc = match(InsertAt(c.replicas_rest, c.slot, ot), c.surrogates);
          out = c.surrogates[alloc[c.slot - 1] - 1];
          break;
        }
        case 3: {
          const auto alloc = match(InsertAt(c.replicas_rest, 1, ot), c.surrogates);
          const int i = stage_three_slot == StageSlot::kFirst ? 1 : c.slot;
          out = c.surrogates[alloc[i - 1] - 1];
          break;
        }
        default:
          out = c.surrogates[c.slot - 1];
          break;
      }
      ++counts[out.id];
    }
    (void)m;
    JudgeHistogram(sc, counts, cfg,
                   "agent " + std::to_string(agent) + " stage" +
                       std::to_string(stage) + " TV",
                   {{"agent", std::to_string(agent)},
                    {"stage", "stage" + std::to_string(stage)}},
                   report, t);
  }
}

}  // namespace

CheckReport CheckStageChain(const Scenario& sc, const CheckConfig& cfg,
                            StageSlot stage_three_slot) {
  const internal::Stopwatch clock;
  CheckReport report;
  report.property = "stage-chain";
  internal::RequireBudget(EstimatePreservationCost(sc), cfg, "stage-chain");
  const Rsm rsm(sc);
  const int n = sc.agents();

  if (cfg.mode == Mode::kExact) {
    const std::int64_t per_stage = EnumeratedPerAgent(sc);
    const std::int64_t stage_four = internal::SaturatingMul(
        internal::SaturatingPow(SupportSize(sc), sc.replicas()), sc.replicas());
    const auto tallies = internal::ParallelMap(cfg.jobs, n, [&](std::size_t j) {
      const int agent = static_cast<int>(j) + 1;
      Tally t;
      t.instances = internal::SaturatingAdd(
          internal::SaturatingMul(per_stage, 3), stage_four);
      const auto s1 = StageOne(rsm, agent);
      const auto s2 = StageTwo(rsm, agent);
      const auto s3 = StageThree(rsm, agent, stage_three_slot);
      const auto s4 = StageFour(sc);
      const std::string a = std::to_string(agent);
      CompareLaws(sc, s1, s2, {{"agent", a}, {"link", "stage1=stage2"}}, t);
      CompareLaws(sc, s2, s3, {{"agent", a}, {"link", "stage2=stage3"}}, t);
      CompareLaws(sc, s3, s4, {{"agent", a}, {"link", "stage3=stage4"}}, t);
      CompareLaws(sc, s4, sc.prior(), {{"agent", a}, {"link", "stage4=prior"}}, t);
      return t;
    });
    internal::MergeTallies(tallies, report);
  } else {
    std::vector<Tally> tallies(n);
    for (int agent = 1; agent <= n; ++agent) {
      SampleStageChain(sc, rsm, agent, stage_three_slot, cfg, report,
                       tallies[agent - 1]);
    }
    FinishMonteCarlo(cfg, report, tallies);
  }
  report.stats.elapsed_seconds = clock.Seconds();
  return report;
}

CheckReport CheckBic(const Scenario& sc, const CheckConfig& cfg,
                     PaymentRule rule) {
  const internal::Stopwatch clock;
  CheckReport report;
  report.property = "bic";
  internal::RequireBudget(EstimateBicCost(sc), cfg, "bic");
  const int n = sc.agents();
  const std::vector<AgentType> support = Support(sc);
  const std::size_t k = support.size();

  std::vector<Rsm> rotated;
  rotated.reserve(n);
  for (int j = 1; j <= n; ++j) rotated.emplace_back(sc.RotateToFront(j), rule);

  struct Cell {
    Rational value;
    double radius = 0.0;
  };
  // Cells are (agent, true type, report), report fastest.
  const std::size_t cells = static_cast<std::size_t>(n) * k * k;
  const auto utils = internal::ParallelMap(cfg.jobs, cells, [&](std::size_t c) {
    const std::size_t j = c / (k * k);
    const AgentType truety = support[(c / k) % k];
    const AgentType bid = support[c % k];
    if (cfg.mode == Mode::kExact) {
      return Cell{rotated[j].MyUtil(truety, bid), 0.0};
    }
    CheckConfig sub = cfg;
    sub.seed = internal::MixSeed(cfg.seed, c);
    const UtilityEstimate e =
        EstimateUtility(rotated[j].scenario(), truety, bid, sub, rule);
    return Cell{e.estimate, e.radius};
  });

  Tally t;
  std::optional<Rational> min_margin;
  for (std::size_t c = 0; c < cells; ++c) {
    const std::size_t j = c / (k * k);
    const std::size_t ti = (c / k) % k;
    const Cell& truthful = utils[j * k * k + ti * k + ti];
    const Cell& deviating = utils[c];
    const Rational margin = truthful.value - deviating.value;
    if (!min_margin || margin < *min_margin) min_margin = margin;
    KeyValues inputs = {{"agent", std::to_string(j + 1)},
                        {"true_type", sc.TypeLabel(support[ti])},
                        {"report", sc.TypeLabel(support[c % k])}};
    ++t.instances;
    if (cfg.mode == Mode::kExact) {
      if (margin.Sign() < 0) {
        t.Add(Witness{std::move(inputs), truthful.value, deviating.value, margin});
      }
      continue;
    }
    const double radius = truthful.radius + deviating.radius;
    report.stats.estimates.push_back(
        Estimate{"agent " + std::to_string(j + 1) + " " +
                     sc.TypeLabel(support[ti]) + "->" +
                     sc.TypeLabel(support[c % k]) + " margin",
                 margin, Rational::CeilTo(radius, kRadiusDenominator)});
    // Only a margin that is negative beyond both radii is a violation.
    if (margin.ToDouble() + radius < 0) {
      t.Add(Witness{std::move(inputs), truthful.value, deviating.value, margin});
    }
  }
  if (min_margin) report.stats.notes.emplace_back("min_margin", min_margin->ToString());

  if (cfg.mode == Mode::kExact) {
    // Each utility evaluation walks the full coin distribution.
    const std::int64_t coins = internal::SaturatingMul(
        internal::SaturatingPow(SupportSize(sc), 2 * sc.replicas() - 1),
        sc.replicas());
    t.instances = internal::SaturatingMul(static_cast<std::int64_t>(cells), coins);
    internal::MergeTallies({t}, report);
  } else {
    FinishMonteCarlo(cfg, report, {t});
    report.stats.instances = static_cast<std::int64_t>(cells);
  }
  report.stats.elapsed_seconds = clock.Seconds();
  return report;
}

CheckReport SearchBicViolation(std::span<const Scenario> grid,
                               const CheckConfig& cfg, PaymentRule rule) {
  const internal::Stopwatch clock;
  std::int64_t instances = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CheckReport r = CheckBic(grid[i], cfg, rule);
    instances += r.stats.instances;
    if (r.verdict == Verdict::kFail) {
      r.stats.notes.emplace_back("scenario_index", std::to_string(i));
      r.stats.notes.emplace_back("scenarios_searched", std::to_string(i + 1));
      r.stats.elapsed_seconds = clock.Seconds();
      return r;
    }
  }
  CheckReport report;
  report.property = "bic";
  report.verdict = Verdict::kPass;
  report.stats.instances = instances;
  report.stats.notes.emplace_back("scenarios_searched", std::to_string(grid.size()));
  report.stats.notes.emplace_back("exhausted", "true");
  report.stats.elapsed_seconds = clock.Seconds();
  return report;
}

}  // namespace mechcheck
