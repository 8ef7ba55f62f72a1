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

#include "mechcheck/scenario_file.h"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "mechcheck/error.h"
#include "json.hpp"

namespace mechcheck {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

[[noreturn]] void Malformed(const std::string& path, const std::string& what) {
  throw MechError(ErrorKind::kParseError, path + ": " + what);
}

[[noreturn]] void Invalid(const std::string& path, const std::string& what) {
  throw MechError(ErrorKind::kValidationError, path + ": " + what);
}

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    Malformed("document", e.what());
  }
}

const Json& Field(const Json& obj, const std::string& key,
                  const std::string& path) {
  if (!obj.is_object()) Malformed(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) Malformed(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

int PositiveInt(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) Malformed(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < 1 || v > 1'000'000) Invalid(path, "must be a positive integer");
  return static_cast<int>(v);
}

std::string Text(const Json& j, const std::string& path) {
  if (!j.is_string()) Malformed(path, "expected a string");
  return j.get<std::string>();
}

Rational RationalValue(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) Malformed(path, "expected a rational string \"p/q\"");
  try {
    return Rational::Parse(j.get<std::string>());
  } catch (const MechError& e) {
    Malformed(path, e.what());
  }
}

std::vector<std::string> Labels(const Json& j, const std::string& path) {
  if (!j.is_array()) Malformed(path, "expected a list of labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string label = Text(j[i], path + "[" + std::to_string(i) + "]");
    if (label.empty() || label.find(',') != std::string::npos) {
      Invalid(path + "[" + std::to_string(i) + "]",
              "labels must be nonempty and contain no comma");
    }
    out.push_back(std::move(label));
  }
  return out;
}

std::map<std::string, int> Index(const std::vector<std::string>& labels) {
  std::map<std::string, int> out;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) out.emplace(labels[i], i);
  return out;
}

std::vector<std::string> SplitCommas(const std::string& key) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(key);
  while (std::getline(in, part, ',')) parts.push_back(part);
  if (!key.empty() && key.back() == ',') parts.emplace_back();
  return parts;
}

int Lookup(const std::map<std::string, int>& index, const std::string& label,
           const std::string& path, const char* what) {
  const auto it = index.find(label);
  if (it == index.end()) Invalid(path, std::string("unknown ") + what + " \"" + label + "\"");
  return it->second;
}

ExactDist<AgentType> ParsePrior(const Json& j, const std::vector<std::string>& types) {
  const std::string path = "prior";
  if (!j.is_object()) Malformed(path, "expected a map from type to rational");
  const auto index = Index(types);
  std::vector<ExactDist<AgentType>::Entry> entries;
  Rational total;
  for (const auto& [label, mass] : j.items()) {
    const int id = Lookup(index, label, path + "." + label, "type");
    const Rational p = RationalValue(mass, path + "." + label);
    if (p.Sign() < 0) Invalid(path + "." + label, "negative mass " + p.ToString());
    total += p;
    entries.emplace_back(AgentType{id}, p);
  }
  if (total != Rational(1)) Invalid(path, "masses sum to " + total.ToString() + ", not 1");
  return ExactDist<AgentType>::FromEntries(std::move(entries));
}

Valuation::Table ParseValuationTable(const Json& j, const std::string& path,
                                     const std::vector<std::string>& types,
                                     const std::vector<std::string>& outcomes) {
  if (!j.is_object()) Malformed(path, "expected a map from \"type,outcome\" to rational");
  const auto type_index = Index(types);
  const auto outcome_index = Index(outcomes);
  std::vector<std::vector<std::optional<Rational>>> cells(
      types.size(), std::vector<std::optional<Rational>>(outcomes.size()));
  for (const auto& [key, value] : j.items()) {
    const std::string cell_path = path + "." + key;
    const auto parts = SplitCommas(key);
    if (parts.size() != 2) Invalid(cell_path, "key must be \"type,outcome\"");
    const int t = Lookup(type_index, parts[0], cell_path, "type");
    const int o = Lookup(outcome_index, parts[1], cell_path, "outcome");
    cells[t][o] = RationalValue(value, cell_path);
  }
  Valuation::Table table(types.size());
  for (std::size_t t = 0; t < types.size(); ++t) {
    for (std::size_t o = 0; o < outcomes.size(); ++o) {
      if (!cells[t][o]) Invalid(path, "missing " + types[t] + "," + outcomes[o]);
      table[t].push_back(*cells[t][o]);
    }
  }
  return table;
}

Valuation ParseValuation(const Json& j, int agents,
                         const std::vector<std::string>& types,
                         const std::vector<std::string>& outcomes) {
  if (!j.is_array()) return Valuation::Shared(ParseValuationTable(j, "valuation", types, outcomes));
  if (static_cast<int>(j.size()) != agents) {
    Invalid("valuation", "expected one map per agent (" + std::to_string(agents) + ")");
  }
  std::vector<Valuation::Table> tables;
  for (std::size_t i = 0; i < j.size(); ++i) {
    tables.push_back(ParseValuationTable(j[i], "valuation[" + std::to_string(i) + "]",
                                         types, outcomes));
  }
  return Valuation::PerAgent(std::move(tables));
}

Algorithm ParseAlgorithm(const Json& j, int agents,
                         const std::vector<std::string>& types,
                         const std::vector<std::string>& outcomes) {
  const std::string path = "algorithm";
  const std::string kind = Text(Field(j, "kind", path), path + ".kind");
  const auto outcome_index = Index(outcomes);
  if (kind == "builtin") {
    const std::string name = Text(Field(j, "name", path), path + ".name");
    if (name == "welfare-max") return Algorithm::WelfareMax();
    if (name == "constant") {
      const Json& params = Field(j, "params", path);
      const std::string o = Text(Field(params, "outcome", path + ".params"),
                                 path + ".params.outcome");
      return Algorithm::Constant(
          Outcome{Lookup(outcome_index, o, path + ".params.outcome", "outcome")});
    }
    Invalid(path + ".name", "unknown builtin \"" + name + "\"");
  }
  if (kind != "table") Invalid(path + ".kind", "expected \"builtin\" or \"table\"");

  const Json& table = Field(j, "table", path);
  const std::string table_path = path + ".table";
  if (!table.is_object()) Malformed(table_path, "expected a map from profile to outcome");
  const auto type_index = Index(types);
  const int num_types = static_cast<int>(types.size());
  const std::int64_t rows = ProfileCount(agents, num_types);
  if (rows > 10'000'000) Invalid(table_path, "profile space too large for a table");
  std::vector<std::optional<ExactDist<Outcome>>> dists(static_cast<std::size_t>(rows));
  bool randomized = false;
  for (const auto& [key, value] : table.items()) {
    const std::string row_path = table_path + "." + key;
    const auto parts = SplitCommas(key);
    if (static_cast<int>(parts.size()) != agents) {
      Invalid(row_path, "profile must list " + std::to_string(agents) + " types");
    }
    Profile profile;
    for (const auto& p : parts) {
      profile.push_back(AgentType{Lookup(type_index, p, row_path, "type")});
    }
    const std::int64_t idx = ProfileIndex(profile, num_types);
    if (value.is_string()) {
      dists[idx] = Point(Outcome{Lookup(outcome_index, value.get<std::string>(),
                                        row_path, "outcome")});
      continue;
    }
    if (!value.is_object()) Malformed(row_path, "expected an outcome or a distribution");
    randomized = true;
    std::vector<ExactDist<Outcome>::Entry> entries;
    Rational total;
    for (const auto& [o, mass] : value.items()) {
      const Rational p = RationalValue(mass, row_path + "." + o);
      if (p.Sign() < 0) Invalid(row_path + "." + o, "negative mass " + p.ToString());
      total += p;
      entries.emplace_back(Outcome{Lookup(outcome_index, o, row_path + "." + o, "outcome")}, p);
    }
    if (total != Rational(1)) {
      Invalid(row_path, "masses sum to " + total.ToString() + ", not 1");
    }
    dists[idx] = ExactDist<Outcome>::FromEntries(std::move(entries));
  }
  if (randomized) return Algorithm::RandomizedTable(std::move(dists));
  std::vector<std::optional<Outcome>> det(dists.size());
  for (std::size_t i = 0; i < dists.size(); ++i) {
    if (dists[i]) det[i] = dists[i]->entries().front().first;
  }
  return Algorithm::DeterministicTable(std::move(det));
}

std::string ProfileKey(const Scenario& sc, const Profile& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += ',';
    out += sc.TypeLabel(p[i]);
  }
  return out;
}

OrderedJson TableJson(const Scenario& sc, const Valuation::Table& table) {
  OrderedJson out = OrderedJson::object();
  for (AgentType t : sc.Types()) {
    for (Outcome o : sc.Outcomes()) {
      out[sc.TypeLabel(t) + "," + sc.OutcomeLabel(o)] = table[t.id][o.id].ToString();
    }
  }
  return out;
}

std::vector<Rational> RationalList(const Json& j, const std::string& path) {
  if (!j.is_array()) Malformed(path, "expected a list of rationals");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(RationalValue(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<int> Sizes(const Json& j, const std::string& path) {
  if (j.is_array()) {
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(PositiveInt(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
  }
  return {PositiveInt(j, path)};
}

}  // namespace

Scenario ParseScenarioText(std::string_view text) {
  const Json doc = ParseJson(text);
  if (!doc.is_object()) Malformed("document", "expected an object");
  const int agents = PositiveInt(Field(doc, "agents", ""), "agents");
  const int replicas = PositiveInt(Field(doc, "replicas", ""), "replicas");
  auto types = Labels(Field(doc, "types", ""), "types");
  auto outcomes = Labels(Field(doc, "outcomes", ""), "outcomes");
  if (types.empty()) Invalid("types", "must be nonempty");
  if (outcomes.empty()) Invalid("outcomes", "must be nonempty");
  if (Index(types).size() != types.size()) Invalid("types", "duplicate label");
  if (Index(outcomes).size() != outcomes.size()) Invalid("outcomes", "duplicate label");
  auto prior = ParsePrior(Field(doc, "prior", ""), types);
  auto valuation = ParseValuation(Field(doc, "valuation", ""), agents, types, outcomes);
  auto algorithm = ParseAlgorithm(Field(doc, "algorithm", ""), agents, types, outcomes);
  return Scenario(agents, replicas, std::move(types), std::move(outcomes),
                  std::move(prior), std::move(valuation), std::move(algorithm));
}

Scenario ParseScenarioFile(const std::string& path) {
  return ParseScenarioText(ReadFile(path));
}

std::string ScenarioToJson(const Scenario& sc) {
  OrderedJson doc;
  doc["agents"] = sc.agents();
  doc["replicas"] = sc.replicas();
  doc["types"] = sc.type_labels();
  doc["outcomes"] = sc.outcome_labels();
  OrderedJson prior = OrderedJson::object();
  for (const auto& [t, p] : sc.prior().entries()) prior[sc.TypeLabel(t)] = p.ToString();
  doc["prior"] = prior;
  const Valuation& v = sc.valuation();
  if (v.shared()) {
    doc["valuation"] = TableJson(sc, v.table(0));
  } else {
    OrderedJson list = OrderedJson::array();
    for (int agent = 1; agent <= sc.agents(); ++agent) {
      list.push_back(TableJson(sc, v.table(sc.base_positions()[agent - 1])));
    }
    doc["valuation"] = list;
  }
  const Algorithm& a = sc.algorithm();
  OrderedJson alg;
  switch (a.kind()) {
    case Algorithm::Kind::kWelfareMax:
      alg["kind"] = "builtin";
      alg["name"] = "welfare-max";
      break;
    case Algorithm::Kind::kConstant:
      alg["kind"] = "builtin";
      alg["name"] = "constant";
      alg["params"]["outcome"] = sc.OutcomeLabel(a.constant());
      break;
    case Algorithm::Kind::kTableDeterministic:
    case Algorithm::Kind::kTableRandomized: {
      alg["kind"] = "table";
      OrderedJson table = OrderedJson::object();
      const std::int64_t rows = ProfileCount(sc.agents(), sc.num_types());
      for (std::int64_t i = 0; i < rows; ++i) {
        const Profile p = ProfileAt(i, sc.agents(), sc.num_types());
        const ExactDist<Outcome> d = sc.RunAlgorithm(p);
        if (a.kind() == Algorithm::Kind::kTableDeterministic) {
          table[ProfileKey(sc, p)] = sc.OutcomeLabel(d.entries().front().first);
          continue;
        }
        OrderedJson row = OrderedJson::object();
        for (const auto& [o, q] : d.entries()) row[sc.OutcomeLabel(o)] = q.ToString();
        table[ProfileKey(sc, p)] = row;
      }
      alg["table"] = table;
      break;
    }
  }
  doc["algorithm"] = alg;
  return doc.dump(2) + "\n";
}

PaymentRule ParsePaymentRule(std::string_view name) {
  if (name == "clarke") return PaymentRule::kClarke;
  if (name == "first-price") return PaymentRule::kFirstPrice;
  Invalid("payment_rule", "expected \"clarke\" or \"first-price\", got \"" +
                              std::string(name) + "\"");
}

std::string_view PaymentRuleName(PaymentRule rule) {
  return rule == PaymentRule::kClarke ? "clarke" : "first-price";
}

VcgGrid ParseGridText(std::string_view text) {
  const Json doc = ParseJson(text);
  if (!doc.is_object()) Malformed("document", "expected an object");
  VcgGrid grid;
  if (doc.contains("payment_rule")) {
    grid.rule = ParsePaymentRule(Text(doc["payment_rule"], "payment_rule"));
  }
  if (doc.contains("families")) {
    const Json& families = doc["families"];
    if (!families.is_array()) Malformed("families", "expected a list");
    for (std::size_t i = 0; i < families.size(); ++i) {
      const std::string path = "families[" + std::to_string(i) + "]";
      const Json& f = families[i];
      const std::string kind = Text(Field(f, "kind", path), path + ".kind");
      if (kind == "single-item") {
        const auto values = RationalList(Field(f, "values", path), path + ".values");
        if (values.empty()) Invalid(path + ".values", "must be nonempty");
        for (int bidders : Sizes(Field(f, "bidders", path), path + ".bidders")) {
          grid.value_families.push_back(SingleItemFamily(bidders, values));
        }
      } else if (kind == "matching") {
        const auto entries = RationalList(Field(f, "entries", path), path + ".entries");
        if (entries.empty()) Invalid(path + ".entries", "must be nonempty");
        for (int size : Sizes(Field(f, "size", path), path + ".size")) {
          grid.matrix_families.push_back(MatrixFamily{size, entries});
        }
      } else {
        Invalid(path + ".kind", "expected \"single-item\" or \"matching\"");
      }
    }
  }
  if (doc.contains("matrices")) {
    const Json& matrices = doc["matrices"];
    if (!matrices.is_array()) Malformed("matrices", "expected a list");
    for (std::size_t i = 0; i < matrices.size(); ++i) {
      const std::string path = "matrices[" + std::to_string(i) + "]";
      if (!matrices[i].is_array()) Malformed(path, "expected a list of rows");
      WeightMatrix w;
      for (std::size_t r = 0; r < matrices[i].size(); ++r) {
        w.push_back(RationalList(matrices[i][r], path + "[" + std::to_string(r) + "]"));
      }
      try {
        RequireSquare(w);
      } catch (const MechError& e) {
        Invalid(path, e.what());
      }
      grid.matrices.push_back(std::move(w));
    }
  }
  return grid;
}

VcgGrid ParseGridFile(const std::string& path) { return ParseGridText(ReadFile(path)); }

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MechError(ErrorKind::kParseError, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string DocumentDigest(std::string_view text) {
  const std::string canonical = ParseJson(text).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

}  // namespace mechcheck
