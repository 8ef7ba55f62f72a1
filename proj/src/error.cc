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

#include "mechcheck/error.h"

namespace mechcheck {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kEmptySupport:
      return "EmptySupport";
    case ErrorKind::kNotNormalized:
      return "NotNormalized";
    case ErrorKind::kBadSlot:
      return "BadSlot";
    case ErrorKind::kIncompleteAlgorithm:
      return "IncompleteAlgorithm";
    case ErrorKind::kEmptyRange:
      return "EmptyRange";
    case ErrorKind::kNonSquare:
      return "NonSquare";
    case ErrorKind::kBudgetExceeded:
      return "BudgetExceeded";
    case ErrorKind::kParseError:
      return "ParseError";
    case ErrorKind::kValidationError:
      return "ValidationError";
  }
  return "Unknown";
}

}  // namespace mechcheck
