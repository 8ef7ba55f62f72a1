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

#ifndef MECHCHECK_SCENARIO_H_
#define MECHCHECK_SCENARIO_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mechcheck/exact_dist.h"
#include "mechcheck/rational.h"

namespace mechcheck {

// Index into a scenario's type table.
struct AgentType {
  int id = 0;
  friend auto operator<=>(const AgentType&, const AgentType&) = default;
};

// Index into a scenario's outcome table.
struct Outcome {
  int id = 0;
  friend auto operator<=>(const Outcome&, const Outcome&) = default;
};

// One reported type per agent, agent 1 first.
using Profile = std::vector<AgentType>;

// (x, rest) with x placed at 1-based `slot`; rest keeps its order.
// Throws kBadSlot unless 1 <= slot <= rest.size() + 1.
Profile InsertAt(std::span<const AgentType> rest, int slot, AgentType x);

// The profile with 1-based `slot` removed. Throws kBadSlot.
std::vector<AgentType> RemoveAt(std::span<const AgentType> profile, int slot);

// v(t, o). Either one table shared by every agent, or one table per agent
// position (needed whenever an outcome means different things to different
// agents, e.g. "the item goes to agent 2").
class Valuation {
 public:
  using Table = std::vector<std::vector<Rational>>;  // [type][outcome]

  static Valuation Shared(Table table);
  static Valuation PerAgent(std::vector<Table> tables);

  bool shared() const { return tables_.size() == 1; }
  int num_tables() const { return static_cast<int>(tables_.size()); }
  const Table& table(int index) const { return tables_[index]; }

  // `position` is a 0-based agent position in the frame the tables were
  // written for; ignored for shared valuations.
  const Rational& At(int position, AgentType t, Outcome o) const {
    return tables_[shared() ? 0 : position][t.id][o.id];
  }

  Rational MinEntry() const;
  Rational MaxEntry() const;

 private:
  explicit Valuation(std::vector<Table> tables) : tables_(std::move(tables)) {}
  std::vector<Table> tables_;
};

// A : T^n -> O (or -> Distr O). Tables are indexed by ProfileIndex.
class Algorithm {
 public:
  enum class Kind {
    kTableDeterministic,
    kTableRandomized,
    kWelfareMax,
    kConstant,
  };

  // Argmax over outcomes of the summed valuations; ties go to the lowest
  // outcome id.
  static Algorithm WelfareMax();
  static Algorithm Constant(Outcome o);
  // Missing rows are allowed here and rejected by Scenario validation.
  static Algorithm DeterministicTable(std::vector<std::optional<Outcome>> rows);
  static Algorithm RandomizedTable(
      std::vector<std::optional<ExactDist<Outcome>>> rows);

  Kind kind() const { return kind_; }
  Outcome constant() const { return constant_; }
  const std::vector<std::optional<Outcome>>& deterministic_rows() const {
    return deterministic_;
  }
  const std::vector<std::optional<ExactDist<Outcome>>>& randomized_rows()
      const {
    return randomized_;
  }

 private:
  Kind kind_ = Kind::kConstant;
  Outcome constant_;
  std::vector<std::optional<Outcome>> deterministic_;
  std::vector<std::optional<ExactDist<Outcome>>> randomized_;
};

// A finite mechanism-design instance: n agents, m replicas, type space T,
// i.i.d. prior, outcome space O, valuation, allocation algorithm.
//
// Agents are 1-based in every public signature. A scenario also carries the
// agent order it presents to callers; RotateToFront changes that order
// without touching the underlying algorithm or valuation tables.
class Scenario {
 public:
  // Validates everything and throws kValidationError naming the offending
  // part.
  Scenario(int agents, int replicas, std::vector<std::string> type_labels,
           std::vector<std::string> outcome_labels, ExactDist<AgentType> prior,
           Valuation valuation, Algorithm algorithm);

  int agents() const { return agents_; }
  int replicas() const { return replicas_; }
  int num_types() const { return static_cast<int>(type_labels_.size()); }
  int num_outcomes() const { return static_cast<int>(outcome_labels_.size()); }

  const std::string& TypeLabel(AgentType t) const { return type_labels_[t.id]; }
  const std::string& OutcomeLabel(Outcome o) const {
    return outcome_labels_[o.id];
  }
  const std::vector<std::string>& type_labels() const { return type_labels_; }
  const std::vector<std::string>& outcome_labels() const {
    return outcome_labels_;
  }
  std::vector<AgentType> Types() const;
  std::vector<Outcome> Outcomes() const;

  const ExactDist<AgentType>& prior() const { return prior_; }
  const Valuation& valuation() const { return valuation_; }
  const Algorithm& algorithm() const { return algorithm_; }

  // v_agent(t, o) for the agent in 1-based position `agent`.
  const Rational& Value(int agent, AgentType t, Outcome o) const {
    return valuation_.At(base_position_[agent - 1], t, o);
  }

  // Throws kIncompleteAlgorithm when the profile has the wrong length or
  // names an unknown type.
  ExactDist<Outcome> RunAlgorithm(std::span<const AgentType> profile) const;

  // base_positions()[k] is the table position of presented agent k+1.
  const std::vector<int>& base_positions() const { return base_position_; }

  // Agent `agent` moved to position 1, the others following in their
  // original order. Throws kBadSlot.
  Scenario RotateToFront(int agent) const;

 private:
  ExactDist<Outcome> RunInBaseFrame(std::span<const AgentType> base) const;

  int agents_;
  int replicas_;
  std::vector<std::string> type_labels_;
  std::vector<std::string> outcome_labels_;
  ExactDist<AgentType> prior_;
  Valuation valuation_;
  Algorithm algorithm_;
  std::vector<int> base_position_;
};

// Lexicographic rank of a profile in T^n (agent 1 most significant).
std::int64_t ProfileIndex(std::span<const AgentType> profile, int num_types);

// Inverse of ProfileIndex.
Profile ProfileAt(std::int64_t index, int agents, int num_types);

// Number of profiles |T|^n, saturating at INT64_MAX.
std::int64_t ProfileCount(int agents, int num_types);

// Free-function spelling of Scenario::RotateToFront.
inline Scenario RotateToFront(const Scenario& sc, int agent) {
  return sc.RotateToFront(agent);
}

}  // namespace mechcheck

#endif  // MECHCHECK_SCENARIO_H_
