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

#ifndef MECHCHECK_REPORT_H_
#define MECHCHECK_REPORT_H_

#include <string>
#include <string_view>

#include "mechcheck/checker.h"

namespace mechcheck {

inline constexpr std::string_view kToolName = "mechcheck";
inline constexpr std::string_view kToolVersion = "1.0.0";

struct ReportHeader {
  std::string tool{kToolName};
  std::string version{kToolVersion};
  std::string mode = "exact";
  std::string scenario_digest;
};

// Every rational is written as an exact "p/q" string. Elapsed time is left
// out so that equal runs give byte-identical documents.
std::string ReportToJson(const ReportHeader& header, const CheckReport& report);

struct ParsedReport {
  ReportHeader header;
  CheckReport report;
};

// Inverse of ReportToJson. Throws kParseError.
ParsedReport ParseReport(std::string_view text);

std::string ReportToText(const ReportHeader& header, const CheckReport& report);

}  // namespace mechcheck

#endif  // MECHCHECK_REPORT_H_
