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

#include "mechcheck/scenario.h"

#include <limits>
#include <set>
#include <string>
#include <utility>

#include "mechcheck/error.h"

namespace mechcheck {
namespace {

[[noreturn]] void Invalid(const std::string& what) {
  throw MechError(ErrorKind::kValidationError, what);
}

void CheckTableShape(const Valuation::Table& table, int num_types,
                     int num_outcomes, const std::string& name) {
  if (static_cast<int>(table.size()) != num_types) {
    Invalid(name + ": expected " + std::to_string(num_types) + " type rows");
  }
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != num_outcomes) {
      Invalid(name + ": expected " + std::to_string(num_outcomes) +
              " outcome columns");
    }
  }
}

void CheckLabels(const std::vector<std::string>& labels,
                 const std::string& name) {
  if (labels.empty()) Invalid(name + ": must be nonempty");
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) Invalid(name + ": duplicate label \"" + l + "\"");
  }
}

}  // namespace

Profile InsertAt(std::span<const AgentType> rest, int slot, AgentType x) {
  if (slot < 1 || slot > static_cast<int>(rest.size()) + 1) {
    throw MechError(ErrorKind::kBadSlot,
                    "insert slot " + std::to_string(slot) + " outside 1.." +
                        std::to_string(rest.size() + 1));
  }
  Profile out;
  out.reserve(rest.size() + 1);
  out.insert(out.end(), rest.begin(), rest.begin() + (slot - 1));
  out.push_back(x);
  out.insert(out.end(), rest.begin() + (slot - 1), rest.end());
  return out;
}

std::vector<AgentType> RemoveAt(std::span<const AgentType> profile, int slot) {
  if (slot < 1 || slot > static_cast<int>(profile.size())) {
    throw MechError(ErrorKind::kBadSlot,
                    "remove slot " + std::to_string(slot) + " outside 1.." +
                        std::to_string(profile.size()));
  }
  std::vector<AgentType> out(profile.begin(), profile.end());
  out.erase(out.begin() + (slot - 1));
  return out;
}

Valuation Valuation::Shared(Table table) {
  std::vector<Table> tables;
  tables.push_back(std::move(table));
  return Valuation(std::move(tables));
}

Valuation Valuation::PerAgent(std::vector<Table> tables) {
  if (tables.empty()) Invalid("valuation: no tables");
  return Valuation(std::move(tables));
}

Rational Valuation::MinEntry() const {
  std::optional<Rational> best;
  for (const auto& t : tables_)
    for (const auto& row : t)
      for (const auto& v : row)
        if (!best || v < *best) best = v;
  return best.value_or(Rational());
}

Rational Valuation::MaxEntry() const {
  std::optional<Rational> best;
  for (const auto& t : tables_)
    for (const auto& row : t)
      for (const auto& v : row)
        if (!best || *best < v) best = v;
  return best.value_or(Rational());
}

Algorithm Algorithm::WelfareMax() {
  Algorithm a;
  a.kind_ = Kind::kWelfareMax;
  return a;
}

Algorithm Algorithm::Constant(Outcome o) {
  Algorithm a;
  a.kind_ = Kind::kConstant;
  a.constant_ = o;
  return a;
}

Algorithm Algorithm::DeterministicTable(
    std::vector<std::optional<Outcome>> rows) {
  Algorithm a;
  a.kind_ = Kind::kTableDeterministic;
  a.deterministic_ = std::move(rows);
  return a;
}

Algorithm Algorithm::RandomizedTable(
    std::vector<std::optional<ExactDist<Outcome>>> rows) {
  Algorithm a;
  a.kind_ = Kind::kTableRandomized;
  a.randomized_ = std::move(rows);
  return a;
}

std::int64_t ProfileCount(int agents, int num_types) {
  std::int64_t count = 1;
  for (int k = 0; k < agents; ++k) {
    if (count > std::numeric_limits<std::int64_t>::max() / num_types) {
      return std::numeric_limits<std::int64_t>::max();
    }
    count *= num_types;
  }
  return count;
}

std::int64_t ProfileIndex(std::span<const AgentType> profile, int num_types) {
  std::int64_t index = 0;
  for (const AgentType t : profile) index = index * num_types + t.id;
  return index;
}

Profile ProfileAt(std::int64_t index, int agents, int num_types) {
  Profile p(static_cast<std::size_t>(agents));
  for (int k = agents - 1; k >= 0; --k) {
    p[k] = AgentType{static_cast<int>(index % num_types)};
    index /= num_types;
  }
  return p;
}

Scenario::Scenario(int agents, int replicas,
                   std::vector<std::string> type_labels,
                   std::vector<std::string> outcome_labels,
                   ExactDist<AgentType> prior, Valuation valuation,
                   Algorithm algorithm)
    : agents_(agents),
      replicas_(replicas),
      type_labels_(std::move(type_labels)),
      outcome_labels_(std::move(outcome_labels)),
      prior_(std::move(prior)),
      valuation_(std::move(valuation)),
      algorithm_(std::move(algorithm)) {
  if (agents_ < 1) Invalid("agents: must be >= 1");
  if (replicas_ < 1) Invalid("replicas: must be >= 1");
  CheckLabels(type_labels_, "types");
  CheckLabels(outcome_labels_, "outcomes");
  const int nt = num_types();
  const int no = num_outcomes();

  for (const auto& [t, p] : prior_.entries()) {
    if (t.id < 0 || t.id >= nt) Invalid("prior: type outside the type table");
  }

  if (!valuation_.shared() && valuation_.num_tables() != agents_) {
    Invalid("valuation: " + std::to_string(valuation_.num_tables()) +
            " per-agent tables for " + std::to_string(agents_) + " agents");
  }
  for (int k = 0; k < valuation_.num_tables(); ++k) {
    CheckTableShape(valuation_.table(k), nt, no,
                    valuation_.shared() ? "valuation"
                                        : "valuation[" + std::to_string(k) + "]");
  }

  const std::int64_t rows = ProfileCount(agents_, nt);
  auto profile_name = [&](std::int64_t index) {
    std::string s;
    for (AgentType t : ProfileAt(index, agents_, nt)) {
      if (!s.empty()) s += ",";
      s += type_labels_[t.id];
    }
    return s;
  };
  switch (algorithm_.kind()) {
    case Algorithm::Kind::kConstant:
      if (algorithm_.constant().id < 0 || algorithm_.constant().id >= no) {
        Invalid("algorithm: constant outcome outside the outcome table");
      }
      break;
    case Algorithm::Kind::kWelfareMax:
      break;
    case Algorithm::Kind::kTableDeterministic: {
      const auto& table = algorithm_.deterministic_rows();
      if (static_cast<std::int64_t>(table.size()) != rows) {
        Invalid("algorithm.table: expected " + std::to_string(rows) + " rows");
      }
      for (std::int64_t i = 0; i < rows; ++i) {
        if (!table[i]) Invalid("algorithm.table: missing profile " + profile_name(i));
        if (table[i]->id < 0 || table[i]->id >= no) {
          Invalid("algorithm.table: unknown outcome for profile " + profile_name(i));
        }
      }
      break;
    }
    case Algorithm::Kind::kTableRandomized: {
      const auto& table = algorithm_.randomized_rows();
      if (static_cast<std::int64_t>(table.size()) != rows) {
        Invalid("algorithm.table: expected " + std::to_string(rows) + " rows");
      }
      for (std::int64_t i = 0; i < rows; ++i) {
        if (!table[i]) Invalid("algorithm.table: missing profile " + profile_name(i));
        for (const auto& [o, p] : table[i]->entries()) {
          if (o.id < 0 || o.id >= no) {
            Invalid("algorithm.table: unknown outcome for profile " +
                    profile_name(i));
          }
        }
      }
      break;
    }
  }

  base_position_.resize(static_cast<std::size_t>(agents_));
  for (int k = 0; k < agents_; ++k) base_position_[k] = k;
}

std::vector<AgentType> Scenario::Types() const {
  std::vector<AgentType> out;
  for (int i = 0; i < num_types(); ++i) out.push_back(AgentType{i});
  return out;
}

std::vector<Outcome> Scenario::Outcomes() const {
  std::vector<Outcome> out;
  for (int i = 0; i < num_outcomes(); ++i) out.push_back(Outcome{i});
  return out;
}

ExactDist<Outcome> Scenario::RunAlgorithm(
    std::span<const AgentType> profile) const {
  if (static_cast<int>(profile.size()) != agents_) {
    throw MechError(ErrorKind::kIncompleteAlgorithm,
                    "profile of length " + std::to_string(profile.size()) +
                        " for " + std::to_string(agents_) + " agents");
  }
  Profile base(profile.size());
  for (int k = 0; k < agents_; ++k) {
    const AgentType t = profile[k];
    if (t.id < 0 || t.id >= num_types()) {
      throw MechError(ErrorKind::kIncompleteAlgorithm,
                      "type id " + std::to_string(t.id) + " outside the table");
    }
    base[base_position_[k]] = t;
  }
  return RunInBaseFrame(base);
}

ExactDist<Outcome> Scenario::RunInBaseFrame(
    std::span<const AgentType> base) const {
  switch (algorithm_.kind()) {
    case Algorithm::Kind::kConstant:
      return Point(algorithm_.constant());
    case Algorithm::Kind::kWelfareMax: {
      Outcome best{0};
      Rational best_welfare;
      for (int o = 0; o < num_outcomes(); ++o) {
        Rational welfare;
        for (int k = 0; k < agents_; ++k) {
          welfare += valuation_.At(k, base[k], Outcome{o});
        }
        if (o == 0 || best_welfare < welfare) {
          best = Outcome{o};
          best_welfare = std::move(welfare);
        }
      }
      return Point(best);
    }
    case Algorithm::Kind::kTableDeterministic: {
      const auto& row = algorithm_.deterministic_rows()[ProfileIndex(base, num_types())];
      if (!row) throw MechError(ErrorKind::kIncompleteAlgorithm, "missing row");
      return Point(*row);
    }
    case Algorithm::Kind::kTableRandomized: {
      const auto& row = algorithm_.randomized_rows()[ProfileIndex(base, num_types())];
      if (!row) throw MechError(ErrorKind::kIncompleteAlgorithm, "missing row");
      return *row;
    }
  }
  throw MechError(ErrorKind::kIncompleteAlgorithm, "unknown algorithm kind");
}

Scenario Scenario::RotateToFront(int agent) const {
  if (agent < 1 || agent > agents_) {
    throw MechError(ErrorKind::kBadSlot,
                    "agent " + std::to_string(agent) + " outside 1.." +
                        std::to_string(agents_));
  }
  Scenario out = *this;
  out.base_position_.clear();
  out.base_position_.push_back(base_position_[agent - 1]);
  for (int k = 0; k < agents_; ++k) {
    if (k != agent - 1) out.base_position_.push_back(base_position_[k]);
  }
  return out;
}

}  // namespace mechcheck
