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

#ifndef MECHCHECK_SCENARIO_FILE_H_
#define MECHCHECK_SCENARIO_FILE_H_

#include <string>
#include <string_view>

#include "mechcheck/checker.h"
#include "mechcheck/scenario.h"

namespace mechcheck {

// JSON scenario document:
//   {"agents": 2, "replicas": 2, "types": ["low", "high"],
//    "outcomes": ["to1", "to2"], "prior": {"low": "1/2", "high": "1/2"},
//    "valuation": {"low,to1": "1", ...},
//    "algorithm": {"kind": "builtin", "name": "welfare-max"}}
// "valuation" may also be a list with one such map per agent. Types missing
// from "prior" get mass 0. Algorithms:
//   {"kind": "builtin", "name": "welfare-max"}
//   {"kind": "builtin", "name": "constant", "params": {"outcome": "to1"}}
//   {"kind": "table", "table": {"low,high": "to1", ...}}
//   {"kind": "table", "table": {"low,high": {"to1": "1/2", "to2": "1/2"}}}
// Throws kParseError on malformed JSON or wrong value kinds and
// kValidationError on content errors; messages start with the key path.
Scenario ParseScenarioText(std::string_view text);
Scenario ParseScenarioFile(const std::string& path);

// Inverse of ParseScenarioText (shared valuations are written as one map).
std::string ScenarioToJson(const Scenario& sc);

// JSON grid document for the VCG checks:
//   {"payment_rule": "clarke" | "first-price",
//    "families": [
//      {"kind": "single-item", "bidders": 3, "values": ["0", "1", "2"]},
//      {"kind": "matching", "size": 2, "entries": ["0", "1/2", "1", "2"]}],
//    "matrices": [[["1", "2"], ["2", "1"]]]}
VcgGrid ParseGridText(std::string_view text);
VcgGrid ParseGridFile(const std::string& path);

PaymentRule ParsePaymentRule(std::string_view name);
std::string_view PaymentRuleName(PaymentRule rule);

std::string ReadFile(const std::string& path);

// FNV-1a 64 of the canonical (sorted-key, compact) form of a JSON document,
// as 16 hex digits.
std::string DocumentDigest(std::string_view text);

}  // namespace mechcheck

#endif  // MECHCHECK_SCENARIO_FILE_H_
