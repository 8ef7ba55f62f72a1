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

#include "mechcheck/vcg.h"

#include <bit>
#include <optional>

#include "mechcheck/error.h"

namespace mechcheck {
namespace {

// Position in range of the first maximizer of `welfare`.
std::size_t FindMax(const std::vector<Rational>& welfare) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < welfare.size(); ++i) {
    if (welfare[best] < welfare[i]) best = i;
  }
  return best;
}

// Subset dynamic program over goods. prefix[A] is the best matching of
// buyers 1..|A| onto exactly the goods in A; suffix[B] is the best matching
// of the last |B| buyers onto exactly B. The allocation is the
// lexicographically first maximizer; buyer j's Clarke term pairs a prefix of
// size j with a disjoint suffix of size m-1-j.
MatchingResult SubsetVcg(const WeightMatrix& w) {
  const int m = static_cast<int>(w.size());
  const unsigned full = (1u << m) - 1;
  std::vector<Rational> prefix(full + 1), suffix(full + 1);
  for (unsigned mask = 1; mask <= full; ++mask) {
    const int pc = std::popcount(mask);
    bool first = true;
    for (int g = 0; g < m; ++g) {
      if (!(mask >> g & 1u)) continue;
      Rational p = prefix[mask & ~(1u << g)] + w[pc - 1][g];
      Rational q = suffix[mask & ~(1u << g)] + w[m - pc][g];
      if (first || prefix[mask] < p) prefix[mask] = std::move(p);
      if (first || suffix[mask] < q) suffix[mask] = std::move(q);
      first = false;
    }
  }

  MatchingResult out;
  out.alloc.resize(m);
  unsigned used = 0;
  for (int b = 0; b < m; ++b) {
    const Rational& target = suffix[full & ~used];
    for (int g = 0; g < m; ++g) {
      if (used >> g & 1u) continue;
      if (w[b][g] + suffix[full & ~used & ~(1u << g)] == target) {
        out.alloc[b] = g + 1;
        used |= 1u << g;
        break;
      }
    }
  }

  const Rational& best = suffix[full];
  out.pays.resize(m);
  for (int j = 0; j < m; ++j) {
    std::optional<Rational> without;
    for (unsigned a = 0; a <= full; ++a) {
      if (std::popcount(a) != j) continue;
      const unsigned rest = full & ~a;
      for (int g = 0; g < m; ++g) {
        if (!(rest >> g & 1u)) continue;
        Rational v = prefix[a] + suffix[rest & ~(1u << g)];
        if (!without || *without < v) without = std::move(v);
      }
    }
    out.pays[j] = *without - (best - w[j][out.alloc[j] - 1]);
  }
  return out;
}

}  // namespace

VcgOutcome VcgGeneral(std::span<const ValueFunction> values,
                      std::span<const Outcome> range, PaymentRule rule) {
  if (range.empty()) {
    throw MechError(ErrorKind::kEmptyRange, "VCG over an empty outcome range");
  }
  const std::size_t k = values.size();
  // table[j][r] = values[j](range[r])
  std::vector<std::vector<Rational>> table(k);
  for (std::size_t j = 0; j < k; ++j) {
    table[j].reserve(range.size());
    for (const Outcome o : range) table[j].push_back(values[j](o));
  }
  std::vector<Rational> welfare(range.size());
  for (std::size_t r = 0; r < range.size(); ++r)
    for (std::size_t j = 0; j < k; ++j) welfare[r] += table[j][r];
  const std::size_t chosen = FindMax(welfare);

  VcgOutcome out;
  out.outcome = range[chosen];
  out.prices.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    if (rule == PaymentRule::kFirstPrice) {
      out.prices[j] = table[j][chosen];
      continue;
    }
    std::vector<Rational> without(range.size());
    for (std::size_t r = 0; r < range.size(); ++r) {
      without[r] = welfare[r] - table[j][r];
    }
    out.prices[j] = without[FindMax(without)] - without[chosen];
  }
  return out;
}

MatchingResult VcgMatching(const WeightMatrix& w, PaymentRule rule) {
  RequireSquare(w);
  const int m = static_cast<int>(w.size());
  MatchingResult out;
  if (m <= kSubsetMatchingLimit) {
    out = SubsetVcg(w);
  } else {
    const Assignment a = MaxWeightAssignmentHungarian(w);
    out.alloc = a.goods;
    out.pays.resize(m);
    for (int j = 0; j < m; ++j) {
      out.pays[j] = MaxWeightWithoutBuyer(w, j + 1) -
                    (a.weight - w[j][a.goods[j] - 1]);
    }
  }
  if (rule == PaymentRule::kFirstPrice) {
    for (int j = 0; j < m; ++j) out.pays[j] = w[j][out.alloc[j] - 1];
  }
  return out;
}

bool IsPermutation(std::span<const int> alloc) {
  std::vector<bool> seen(alloc.size(), false);
  for (int g : alloc) {
    if (g < 1 || g > static_cast<int>(alloc.size()) || seen[g - 1]) return false;
    seen[g - 1] = true;
  }
  return true;
}

}  // namespace mechcheck
