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

#ifndef MECHCHECK_VCG_H_
#define MECHCHECK_VCG_H_

#include <functional>
#include <span>
#include <vector>

#include "mechcheck/matching.h"
#include "mechcheck/rational.h"
#include "mechcheck/scenario.h"

namespace mechcheck {

// kClarke is VCG. kFirstPrice (each agent pays its own reported value for the
// chosen outcome) exists only as a negative control for the checkers.
enum class PaymentRule { kClarke, kFirstPrice };

struct VcgOutcome {
  Outcome outcome;
  std::vector<Rational> prices;
};

using ValueFunction = std::function<Rational(Outcome)>;

// Welfare-maximizing outcome over `range` (ties to the earliest position in
// range) with Clarke pivot prices. Throws kEmptyRange.
VcgOutcome VcgGeneral(std::span<const ValueFunction> values,
                      std::span<const Outcome> range,
                      PaymentRule rule = PaymentRule::kClarke);

// VCG on a square matching market. alloc[j] is the 1-based good of buyer
// j+1. Ties go to the lexicographically smallest permutation regardless of
// who deviates. Throws kNonSquare.
struct MatchingResult {
  std::vector<int> alloc;
  std::vector<Rational> pays;
};

MatchingResult VcgMatching(const WeightMatrix& w,
                           PaymentRule rule = PaymentRule::kClarke);

// Matchings up to this size are solved by a dynamic program over subsets of
// goods; larger ones by the Hungarian solver.
inline constexpr int kSubsetMatchingLimit = 8;

// True iff alloc is a bijection on {1..alloc.size()}.
bool IsPermutation(std::span<const int> alloc);

}  // namespace mechcheck

#endif  // MECHCHECK_VCG_H_
