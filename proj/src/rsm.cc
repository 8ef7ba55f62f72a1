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

#include "mechcheck/rsm.h"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#include "mechcheck/error.h"

namespace mechcheck {

struct Rsm::Cache {
  explicit Cache(int agents)
      : weight_once(agents), weights(agents), law_once(agents), laws(agents) {}

  std::once_flag coins_once;
  std::optional<ExactDist<Coins>> coins;
  std::vector<std::once_flag> weight_once;
  std::vector<std::vector<Rational>> weights;  // [agent][r * |T| + s]
  std::vector<std::once_flag> law_once;
  std::vector<std::optional<ExactDist<AgentType>>> laws;
};

ExactDist<Coins> RsmCoins(const Scenario& sc) {
  const int m = sc.replicas();
  const auto replicas = Power(sc.prior(), m - 1);
  const auto surrogates = Power(sc.prior(), m);
  const Rational slot_mass(1, m);
  std::vector<ExactDist<Coins>::Entry> entries;
  entries.reserve(replicas.size() * surrogates.size() * m);
  for (const auto& [rest, pr] : replicas.entries()) {
    for (const auto& [surs, ps] : surrogates.entries()) {
      const Rational mass = pr * ps * slot_mass;
      for (int slot = 1; slot <= m; ++slot) {
        entries.emplace_back(Coins{rest, surs, slot}, mass);
      }
    }
  }
  return ExactDist<Coins>::FromNormalized(std::move(entries));
}

Rational ExpectedWeight(const Scenario& sc, int agent, AgentType replica,
                        AgentType surrogate) {
  if (agent < 1 || agent > sc.agents()) {
    throw MechError(ErrorKind::kBadSlot, "agent " + std::to_string(agent));
  }
  const auto others = Power(sc.prior(), sc.agents() - 1);
  return Expectation(others, [&](const std::vector<AgentType>& rest) {
    const Profile profile = InsertAt(rest, agent, surrogate);
    return Expectation(sc.RunAlgorithm(profile), [&](const Outcome& o) {
      return sc.Value(agent, replica, o);
    });
  });
}

Rsm::Rsm(Scenario sc, PaymentRule rule)
    : sc_(std::move(sc)),
      rule_(rule),
      cache_(std::make_unique<Cache>(sc_.agents())) {}

Rsm::~Rsm() = default;
Rsm::Rsm(Rsm&&) noexcept = default;
Rsm& Rsm::operator=(Rsm&&) noexcept = default;

const ExactDist<Coins>& Rsm::coins() const {
  std::call_once(cache_->coins_once, [&] { cache_->coins = RsmCoins(sc_); });
  return *cache_->coins;
}

const Rational& Rsm::Weight(int agent, AgentType replica,
                            AgentType surrogate) const {
  if (agent < 1 || agent > sc_.agents()) {
    throw MechError(ErrorKind::kBadSlot, "agent " + std::to_string(agent));
  }
  const int nt = sc_.num_types();
  std::call_once(cache_->weight_once[agent - 1], [&] {
    auto& table = cache_->weights[agent - 1];
    table.resize(static_cast<std::size_t>(nt) * nt);
    for (int r = 0; r < nt; ++r)
      for (int s = 0; s < nt; ++s)
        table[r * nt + s] =
            ExpectedWeight(sc_, agent, AgentType{r}, AgentType{s});
  });
  return cache_->weights[agent - 1][replica.id * nt + surrogate.id];
}

WeightMatrix Rsm::Weights(int agent, std::span<const AgentType> replicas,
                          std::span<const AgentType> surrogates) const {
  WeightMatrix w(replicas.size());
  for (std::size_t a = 0; a < replicas.size(); ++a) {
    w[a].reserve(surrogates.size());
    for (const AgentType s : surrogates) {
      w[a].push_back(Weight(agent, replicas[a], s));
    }
  }
  return w;
}

SurrogatePayment Rsm::Det(int agent, const Coins& coins,
                          AgentType report) const {
  const int m = sc_.replicas();
  if (static_cast<int>(coins.replicas_rest.size()) != m - 1 ||
      static_cast<int>(coins.surrogates.size()) != m) {
    throw MechError(ErrorKind::kBadSlot,
                    "coins do not match " + std::to_string(m) + " replicas");
  }
  if (coins.slot < 1 || coins.slot > m) {
    throw MechError(ErrorKind::kBadSlot,
                    "slot " + std::to_string(coins.slot) + " outside 1.." +
                        std::to_string(m));
  }
  const Profile replicas = InsertAt(coins.replicas_rest, coins.slot, report);
  const MatchingResult vcg =
      VcgMatching(Weights(agent, replicas, coins.surrogates), rule_);
  const int i = coins.slot - 1;
  return SurrogatePayment{coins.surrogates[vcg.alloc[i] - 1], vcg.pays[i]};
}

ExactDist<AgentType> Rsm::Others(int agent, AgentType t) const {
  return Map(coins(),
             [&](const Coins& c) { return Det(agent, c, t).surrogate; });
}

const ExactDist<AgentType>& Rsm::SurrogateLaw(int agent) const {
  if (agent < 1 || agent > sc_.agents()) {
    throw MechError(ErrorKind::kBadSlot, "agent " + std::to_string(agent));
  }
  std::call_once(cache_->law_once[agent - 1], [&] {
    cache_->laws[agent - 1] = Bind(
        sc_.prior(), [&](const AgentType& t) { return Others(agent, t); });
  });
  return *cache_->laws[agent - 1];
}

Rational Rsm::UtilGivenLaws(std::span<const ExactDist<AgentType>> laws,
                            AgentType truety, AgentType bid) const {
  const auto others = Product(laws);
  // The value term depends on the coins only through agent 1's surrogate.
  std::map<AgentType, Rational> value_given_surrogate;
  auto value_of = [&](AgentType mysur) -> const Rational& {
    auto it = value_given_surrogate.find(mysur);
    if (it != value_given_surrogate.end()) return it->second;
    Rational v = Expectation(others, [&](const std::vector<AgentType>& rest) {
      const Profile profile = InsertAt(rest, 1, mysur);
      return Expectation(sc_.RunAlgorithm(profile), [&](const Outcome& o) {
        return sc_.Value(1, truety, o);
      });
    });
    return value_given_surrogate.emplace(mysur, std::move(v)).first->second;
  };
  return Expectation(coins(), [&](const Coins& c) {
    const SurrogatePayment sp = Det(1, c, bid);
    return value_of(sp.surrogate) - sp.payment;
  });
}

Rational Rsm::Util(const OtherMoves& othermoves, AgentType truety,
                   AgentType bid) const {
  std::vector<ExactDist<AgentType>> laws;
  for (int k = 2; k <= sc_.agents(); ++k) {
    laws.push_back(Bind(sc_.prior(),
                        [&](const AgentType& t) { return othermoves(k, t); }));
  }
  return UtilGivenLaws(laws, truety, bid);
}

Rational Rsm::MyUtil(AgentType truety, AgentType bid) const {
  std::vector<ExactDist<AgentType>> laws;
  for (int k = 2; k <= sc_.agents(); ++k) laws.push_back(SurrogateLaw(k));
  return UtilGivenLaws(laws, truety, bid);
}

}  // namespace mechcheck
