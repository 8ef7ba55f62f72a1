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

#ifndef MECHCHECK_SRC_CHECKER_COMMON_H_
#define MECHCHECK_SRC_CHECKER_COMMON_H_

#include <chrono>
#include <string>
#include <vector>

#include "mechcheck/checker.h"
#include "mechcheck/matching.h"

namespace mechcheck::internal {

// Partial result of one enumeration chunk.
struct Tally {
  std::int64_t instances = 0;
  std::int64_t violations = 0;
  std::vector<Witness> witnesses;

  void Add(Witness w) {
    ++violations;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
  }
};

// Folds chunk tallies into `report` in chunk order and sets the verdict.
void MergeTallies(const std::vector<Tally>& tallies, CheckReport& report);

std::string MatrixText(const WeightMatrix& w);
std::string RowText(const std::vector<Rational>& row);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void RequireBudget(std::int64_t cost, const CheckConfig& cfg,
                   const std::string& what);

}  // namespace mechcheck::internal

#endif  // MECHCHECK_SRC_CHECKER_COMMON_H_
