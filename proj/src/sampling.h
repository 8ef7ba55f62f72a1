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

#ifndef MECHCHECK_SRC_SAMPLING_H_
#define MECHCHECK_SRC_SAMPLING_H_

#include <map>
#include <random>
#include <vector>

#include "mechcheck/exact_dist.h"
#include "mechcheck/rsm.h"
#include "mechcheck/scenario.h"

namespace mechcheck::internal {

using Rng = std::mt19937_64;

// Draws coins for the replica-surrogate procedure directly, without
// materializing the coin distribution.
class CoinSampler {
 public:
  CoinSampler(const Scenario& sc)
      : prior_(sc.prior()), slot_(1, sc.replicas()), replicas_(sc.replicas()) {}

  AgentType Type(Rng& rng) const { return prior_(rng); }

  Coins Draw(Rng& rng) {
    Coins c;
    c.replicas_rest.reserve(replicas_ - 1);
    for (int k = 0; k + 1 < replicas_; ++k) c.replicas_rest.push_back(prior_(rng));
    c.surrogates.reserve(replicas_);
    for (int k = 0; k < replicas_; ++k) c.surrogates.push_back(prior_(rng));
    c.slot = slot_(rng);
    return c;
  }

  int Slot(Rng& rng) { return slot_(rng); }

 private:
  Sampler<AgentType> prior_;
  std::uniform_int_distribution<int> slot_;
  int replicas_;
};

// Memoizes Rsm::Det by (agent, report, coins); ids are dense and stable.
class DetMemo {
 public:
  explicit DetMemo(const Rsm& rsm) : rsm_(rsm) {}

  std::size_t Get(int agent, const Coins& coins, AgentType report) {
    std::vector<int> key;
    key.reserve(coins.replicas_rest.size() + coins.surrogates.size() + 3);
    key.push_back(agent);
    key.push_back(report.id);
    key.push_back(coins.slot);
    for (AgentType t : coins.replicas_rest) key.push_back(t.id);
    for (AgentType t : coins.surrogates) key.push_back(t.id);
    auto [it, inserted] = ids_.try_emplace(std::move(key), results_.size());
    if (inserted) results_.push_back(rsm_.Det(agent, coins, report));
    return it->second;
  }

  const SurrogatePayment& result(std::size_t id) const { return results_[id]; }

 private:
  const Rsm& rsm_;
  std::map<std::vector<int>, std::size_t> ids_;
  std::vector<SurrogatePayment> results_;
};

}  // namespace mechcheck::internal

#endif  // MECHCHECK_SRC_SAMPLING_H_
