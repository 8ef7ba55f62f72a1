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

#include "mechcheck/checker.h"
#include "sampling.h"

namespace mechcheck {

Rational UtilityRange(const Scenario& sc, PaymentRule rule) {
  Rational lo, hi;
  bool first = true;
  for (AgentType t : sc.Types()) {
    for (Outcome o : sc.Outcomes()) {
      const Rational& v = sc.Value(1, t, o);
      if (first || v < lo) lo = v;
      if (first || hi < v) hi = v;
      first = false;
    }
  }
  // Values and weights of agent 1 lie in [lo, hi]. Clarke payments lie in
  // [0, (m-1)(hi-lo)]; first-price payments in [lo, hi].
  const Rational spread = hi - lo;
  if (rule == PaymentRule::kFirstPrice) return spread * Rational(2);
  return spread * Rational(sc.replicas());
}

double HoeffdingRadius(const Rational& range, std::int64_t samples,
                       double confidence) {
  if (samples <= 0) return INFINITY;
  const double delta = 1.0 - confidence;
  return range.ToDouble() *
         std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(samples)));
}

UtilityEstimate EstimateUtility(const Scenario& sc, AgentType truety,
                                AgentType bid, const CheckConfig& cfg,
                                PaymentRule rule) {
  const Rsm rsm(sc, rule);
  internal::CoinSampler coins(sc);
  internal::DetMemo memo(rsm);
  internal::Rng rng(cfg.seed);

  std::map<Profile, std::int64_t> profile_counts;
  std::vector<std::int64_t> pay_counts;
  Profile profile(static_cast<std::size_t>(sc.agents()));
  for (std::int64_t n = 0; n < cfg.samples; ++n) {
    const std::size_t mine = memo.Get(1, coins.Draw(rng), bid);
    if (mine >= pay_counts.size()) pay_counts.resize(mine + 1, 0);
    ++pay_counts[mine];
    profile[0] = memo.result(mine).surrogate;
    for (int k = 2; k <= sc.agents(); ++k) {
      const AgentType other = coins.Type(rng);
      profile[k - 1] = memo.result(memo.Get(k, coins.Draw(rng), other)).surrogate;
    }
    ++profile_counts[profile];
  }

  // Exact mean of the drawn per-sample utilities; the algorithm's own
  // randomness enters through its conditional expectation.
  Rational total;
  for (const auto& [p, count] : profile_counts) {
    const Rational value = Expectation(sc.RunAlgorithm(p), [&](const Outcome& o) {
      return sc.Value(1, truety, o);
    });
    total += value * Rational(count);
  }
  for (std::size_t id = 0; id < pay_counts.size(); ++id) {
    if (pay_counts[id] == 0) continue;
    total -= memo.result(id).payment * Rational(pay_counts[id]);
  }
  UtilityEstimate out;
  out.samples = cfg.samples;
  out.estimate = cfg.samples > 0 ? total / Rational(cfg.samples) : Rational();
  out.radius = HoeffdingRadius(UtilityRange(sc, rule), cfg.samples, cfg.confidence);
  return out;
}

}  // namespace mechcheck
