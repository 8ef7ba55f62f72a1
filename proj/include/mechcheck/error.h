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

#ifndef MECHCHECK_ERROR_H_
#define MECHCHECK_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mechcheck {

enum class ErrorKind {
  kEmptySupport,
  kNotNormalized,
  kBadSlot,
  kIncompleteAlgorithm,
  kEmptyRange,
  kNonSquare,
  kBudgetExceeded,
  kParseError,
  kValidationError,
};

std::string_view ErrorKindName(ErrorKind kind);

// Every library failure is reported through this exception. The kind is the
// stable, machine-readable part; what() carries the human diagnostic.
class MechError : public std::runtime_error {
 public:
  MechError(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mechcheck

#endif  // MECHCHECK_ERROR_H_
