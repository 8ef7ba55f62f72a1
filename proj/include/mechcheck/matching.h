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

#ifndef MECHCHECK_MATCHING_H_
#define MECHCHECK_MATCHING_H_

#include <span>
#include <vector>

#include "mechcheck/rational.h"

namespace mechcheck {

// w[buyer][good]. Rows are buyers (replicas), columns goods (surrogates).
using WeightMatrix = std::vector<std::vector<Rational>>;

// A perfect matching of buyers to goods. goods[b] is the 1-based good of
// buyer b+1.
struct Assignment {
  std::vector<int> goods;
  Rational weight;
};

// Throws kNonSquare for ragged or non-square input.
void RequireSquare(const WeightMatrix& w);

Rational AssignmentWeight(const WeightMatrix& w, std::span<const int> goods);

// Exhaustive search in lexicographic permutation order; returns the
// lexicographically smallest maximum-weight permutation. Defines the
// canonical answer.
Assignment MaxWeightAssignmentBruteForce(const WeightMatrix& w);

// Hungarian algorithm over exact rationals, O(m^3), followed by a repair pass
// that walks the tight-edge subgraph of the optimal duals to pick the
// lexicographically smallest optimal permutation. Agrees with the brute-force
// solver on every input.
Assignment MaxWeightAssignmentHungarian(const WeightMatrix& w);

// Maximum weight of matching every buyer except `buyer` (1-based) into the
// goods, one good left over. Zero for a 1x1 matrix.
Rational MaxWeightWithoutBuyer(const WeightMatrix& w, int buyer);

}  // namespace mechcheck

#endif  // MECHCHECK_MATCHING_H_
