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

#ifndef MECHCHECK_RSM_H_
#define MECHCHECK_RSM_H_

#include <compare>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "mechcheck/exact_dist.h"
#include "mechcheck/matching.h"
#include "mechcheck/rational.h"
#include "mechcheck/scenario.h"
#include "mechcheck/vcg.h"

namespace mechcheck {

// One realization of the randomness of the replica-surrogate procedure:
// the m-1 replicas other than the reporting one, the m surrogates, and the
// 1-based slot where the report is placed among the replicas.
struct Coins {
  std::vector<AgentType> replicas_rest;
  std::vector<AgentType> surrogates;
  int slot = 1;
  friend auto operator<=>(const Coins&, const Coins&) = default;
};

struct SurrogatePayment {
  AgentType surrogate;
  Rational payment;
};

// Moves of the agents other than agent 1: maps (agent, type) to a
// distribution over the surrogate that agent submits.
using OtherMoves = std::function<ExactDist<AgentType>(int, AgentType)>;

// prior^(m-1) x prior^m x uniform(1..m).
ExactDist<Coins> RsmCoins(const Scenario& sc);

// w_agent(r, s): expected value for an agent of true type r when s is
// submitted at the agent's position and everyone else is a fresh prior
// draw. Straight from the definition, uncached.
Rational ExpectedWeight(const Scenario& sc, int agent, AgentType replica,
                        AgentType surrogate);

// The replica-surrogate-matching reduction for one scenario, in the model
// where the weights are exact expectations.
//
// Weights, the coin distribution and the surrogate law of each agent are
// memoized on first use. The memo is guarded by per-entry once-flags, so a
// single Rsm may be shared across threads.
class Rsm {
 public:
  explicit Rsm(Scenario sc, PaymentRule rule = PaymentRule::kClarke);
  ~Rsm();
  Rsm(Rsm&&) noexcept;
  Rsm& operator=(Rsm&&) noexcept;

  const Scenario& scenario() const { return sc_; }
  PaymentRule rule() const { return rule_; }

  const ExactDist<Coins>& coins() const;

  // Memoized ExpectedWeight.
  const Rational& Weight(int agent, AgentType replica,
                         AgentType surrogate) const;

  WeightMatrix Weights(int agent, std::span<const AgentType> replicas,
                       std::span<const AgentType> surrogates) const;

  // Places the report at coins.slot, runs VCG on the replica/surrogate
  // market and returns the surrogate matched to that slot together with the
  // slot's payment. Throws kBadSlot on malformed coins.
  SurrogatePayment Det(int agent, const Coins& coins, AgentType report) const;

  // Law of the surrogate produced for `agent` reporting t, over all coins.
  ExactDist<AgentType> Others(int agent, AgentType t) const;

  // bind(prior, t -> Others(agent, t)), memoized.
  const ExactDist<AgentType>& SurrogateLaw(int agent) const;

  // Expected utility of agent 1 with true type `truety` reporting `bid`
  // while agents 2..n draw from the prior and move through `othermoves`.
  Rational Util(const OtherMoves& othermoves, AgentType truety,
                AgentType bid) const;

  // Util with every other agent running the procedure truthfully.
  Rational MyUtil(AgentType truety, AgentType bid) const;

 private:
  struct Cache;

  Rational UtilGivenLaws(std::span<const ExactDist<AgentType>> laws,
                         AgentType truety, AgentType bid) const;

  Scenario sc_;
  PaymentRule rule_;
  std::unique_ptr<Cache> cache_;
};

}  // namespace mechcheck

#endif  // MECHCHECK_RSM_H_
