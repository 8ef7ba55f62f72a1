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

#include "mechcheck/report.h"

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "mechcheck/error.h"

namespace mechcheck {
namespace {

using Json = nlohmann::ordered_json;

Json KeyValuesJson(const KeyValues& kv) {
  Json out = Json::array();
  for (const auto& [k, v] : kv) out.push_back(Json::array({k, v}));
  return out;
}

KeyValues KeyValuesFrom(const Json& j) {
  KeyValues out;
  for (const auto& pair : j) {
    out.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
  }
  return out;
}

Verdict VerdictFrom(const std::string& name) {
  for (Verdict v : {Verdict::kPass, Verdict::kFail, Verdict::kEstimated}) {
    if (VerdictName(v) == name) return v;
  }
  throw MechError(ErrorKind::kParseError, "verdict: unknown \"" + name + "\"");
}

std::string Inline(const KeyValues& kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    if (!out.empty()) out += ' ';
    out += k + "=" + v;
  }
  return out;
}

}  // namespace

std::string ReportToJson(const ReportHeader& header, const CheckReport& report) {
  Json doc;
  doc["tool"] = header.tool;
  doc["version"] = header.version;
  doc["property"] = report.property;
  doc["mode"] = header.mode;
  doc["verdict"] = std::string(VerdictName(report.verdict));
  doc["scenario_digest"] = header.scenario_digest;
  Json stats;
  stats["instances"] = report.stats.instances;
  stats["violations"] = report.stats.violations;
  stats["samples"] = report.stats.samples;
  stats["notes"] = KeyValuesJson(report.stats.notes);
  doc["stats"] = stats;
  Json estimates = Json::array();
  for (const Estimate& e : report.stats.estimates) {
    estimates.push_back({{"label", e.label},
                         {"value", e.value.ToString()},
                         {"radius", e.radius.ToString()}});
  }
  doc["estimates"] = estimates;
  Json witnesses = Json::array();
  for (const Witness& w : report.witnesses) {
    witnesses.push_back({{"inputs", KeyValuesJson(w.inputs)},
                         {"left", w.left.ToString()},
                         {"right", w.right.ToString()},
                         {"margin", w.margin.ToString()}});
  }
  doc["witnesses"] = witnesses;
  return doc.dump(2) + "\n";
}

ParsedReport ParseReport(std::string_view text) {
  ParsedReport out;
  try {
    const Json doc = Json::parse(text);
    out.header.tool = doc.at("tool").get<std::string>();
    out.header.version = doc.at("version").get<std::string>();
    out.header.mode = doc.at("mode").get<std::string>();
    out.header.scenario_digest = doc.at("scenario_digest").get<std::string>();
    out.report.property = doc.at("property").get<std::string>();
    out.report.verdict = VerdictFrom(doc.at("verdict").get<std::string>());
    const Json& stats = doc.at("stats");
    out.report.stats.instances = stats.at("instances").get<std::int64_t>();
    out.report.stats.violations = stats.at("violations").get<std::int64_t>();
    out.report.stats.samples = stats.at("samples").get<std::int64_t>();
    out.report.stats.notes = KeyValuesFrom(stats.at("notes"));
    for (const Json& e : doc.at("estimates")) {
      out.report.stats.estimates.push_back(
          Estimate{e.at("label").get<std::string>(),
                   Rational::Parse(e.at("value").get<std::string>()),
                   Rational::Parse(e.at("radius").get<std::string>())});
    }
    for (const Json& w : doc.at("witnesses")) {
      out.report.witnesses.push_back(
          Witness{KeyValuesFrom(w.at("inputs")),
                  Rational::Parse(w.at("left").get<std::string>()),
                  Rational::Parse(w.at("right").get<std::string>()),
                  Rational::Parse(w.at("margin").get<std::string>())});
    }
  } catch (const Json::exception& e) {
    throw MechError(ErrorKind::kParseError, std::string("report: ") + e.what());
  }
  return out;
}

std::string ReportToText(const ReportHeader& header, const CheckReport& report) {
  std::ostringstream out;
  out << "property:   " << report.property << "\n"
      << "mode:       " << header.mode << "\n"
      << "verdict:    " << VerdictName(report.verdict) << "\n"
      << "instances:  " << report.stats.instances << "\n"
      << "violations: " << report.stats.violations << "\n";
  if (report.stats.samples > 0) out << "samples:    " << report.stats.samples << "\n";
  char elapsed[32];
  std::snprintf(elapsed, sizeof(elapsed), "%.3fs", report.stats.elapsed_seconds);
  out << "elapsed:    " << elapsed << "\n";
  for (const auto& [k, v] : report.stats.notes) out << "note:       " << k << "=" << v << "\n";
  for (const Estimate& e : report.stats.estimates) {
    out << "estimate:   " << e.label << " = " << e.value << " +/- " << e.radius
        << " (~" << e.value.ToDouble() << ")\n";
  }
  for (std::size_t i = 0; i < report.witnesses.size(); ++i) {
    const Witness& w = report.witnesses[i];
    out << "witness " << i + 1 << ":  " << Inline(w.inputs) << " left=" << w.left
        << " right=" << w.right << " margin=" << w.margin << "\n";
  }
  return out.str();
}

}  // namespace mechcheck
