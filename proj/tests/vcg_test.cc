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

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "mechcheck/error.h"
#include "test_support.h"

namespace mechcheck {
namespace {

using ::mechcheck::testing::RandomMatrix;

// Item to bidder k: bidder k values it at values[k], others at 0.
std::vector<ValueFunction> SingleItem(const std::vector<Rational>& values) {
  std::vector<ValueFunction> out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    out.push_back([k, v = values[k]](Outcome o) {
      return o.id == static_cast<int>(k) ? v : Rational(0);
    });
  }
  return out;
}

std::vector<Outcome> Range(int k) {
  std::vector<Outcome> r;
  for (int i = 0; i < k; ++i) r.push_back(Outcome{i});
  return r;
}

TEST(VcgGeneralTest, SecondPriceAuction) {
  const auto values = SingleItem({3, 5});
  const auto range = Range(2);
  const VcgOutcome out = VcgGeneral(values, range);
  EXPECT_EQ(out.outcome, Outcome{1});
  EXPECT_EQ(out.prices, (std::vector<Rational>{0, 3}));
}

TEST(VcgGeneralTest, SingleBidderPaysNothing) {
  const std::vector<ValueFunction> values = {[](Outcome o) { return Rational(o.id + 4); }};
  const auto range = Range(3);
  const VcgOutcome out = VcgGeneral(values, range);
  EXPECT_EQ(out.outcome, Outcome{2});
  EXPECT_EQ(out.prices, (std::vector<Rational>{0}));
}

TEST(VcgGeneralTest, AllZeroPicksFirstOutcome) {
  const auto values = SingleItem({0, 0, 0});
  const std::vector<Outcome> range = {Outcome{2}, Outcome{0}, Outcome{1}};
  const VcgOutcome out = VcgGeneral(values, range);
  EXPECT_EQ(out.outcome, Outcome{2});
  EXPECT_EQ(out.prices, (std::vector<Rational>{0, 0, 0}));
}

TEST(VcgGeneralTest, EmptyRange) {
  const auto values = SingleItem({1});
  try {
    VcgGeneral(values, std::span<const Outcome>());
    FAIL() << "expected MechError";
  } catch (const MechError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyRange);
  }
}

TEST(VcgGeneralTest, FirstPriceChargesOwnValue) {
  const auto values = SingleItem({3, 5});
  const auto range = Range(2);
  const VcgOutcome out = VcgGeneral(values, range, PaymentRule::kFirstPrice);
  EXPECT_EQ(out.outcome, Outcome{1});
  EXPECT_EQ(out.prices, (std::vector<Rational>{0, 5}));
}

TEST(VcgGeneralTest, RandomTruthfulnessAndNonNegativity) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 3);
    const int outcomes = 1 + static_cast<int>(rng() % 4);
    std::vector<std::vector<Rational>> table(k, std::vector<Rational>(outcomes));
    for (auto& row : table) {
      for (auto& x : row) x = ::mechcheck::testing::RandomRational(rng, 6, 3);
    }
    auto funcs = [](const std::vector<std::vector<Rational>>& t) {
      std::vector<ValueFunction> out;
      for (const auto& row : t) out.push_back([row](Outcome o) { return row[o.id]; });
      return out;
    };
    const auto range = Range(outcomes);
    const VcgOutcome truthful = VcgGeneral(funcs(table), range);
    for (const Rational& p : truthful.prices) EXPECT_GE(p, Rational(0));
    const int j = static_cast<int>(rng() % k);
    auto lie = table;
    for (auto& x : lie[j]) x = ::mechcheck::testing::RandomRational(rng, 6, 3);
    const VcgOutcome deviated = VcgGeneral(funcs(lie), range);
    EXPECT_GE(table[j][truthful.outcome.id] - truthful.prices[j],
              table[j][deviated.outcome.id] - deviated.prices[j]);
  }
}

TEST(VcgMatchingTest, DiagonalMatrix) {
  const MatchingResult r = VcgMatching({{2, 1}, {1, 2}});
  EXPECT_EQ(r.alloc, (std::vector<int>{1, 2}));
  EXPECT_EQ(r.pays, (std::vector<Rational>{0, 0}));
}

TEST(VcgMatchingTest, TiedMatrixPaysExternality) {
  const MatchingResult r = VcgMatching({{2, 1}, {2, 1}});
  EXPECT_EQ(r.alloc, (std::vector<int>{1, 2}));
  EXPECT_EQ(r.pays, (std::vector<Rational>{1, 0}));
}

TEST(VcgMatchingTest, SingleBuyer) {
  const MatchingResult r = VcgMatching({{5}});
  EXPECT_EQ(r.alloc, (std::vector<int>{1}));
  EXPECT_EQ(r.pays, (std::vector<Rational>{0}));
}

TEST(VcgMatchingTest, NonSquare) {
  try {
    VcgMatching({{1, 2}, {3, 4}, {5, 6}});
    FAIL() << "expected MechError";
  } catch (const MechError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNonSquare);
  }
}

TEST(VcgMatchingTest, FirstPriceChargesMatchedWeight) {
  const MatchingResult r = VcgMatching({{2, 1}, {2, 1}}, PaymentRule::kFirstPrice);
  EXPECT_EQ(r.alloc, (std::vector<int>{1, 2}));
  EXPECT_EQ(r.pays, (std::vector<Rational>{2, 1}));
}

TEST(IsPermutationTest, Examples) {
  EXPECT_TRUE(IsPermutation(std::vector<int>{2, 1}));
  EXPECT_FALSE(IsPermutation(std::vector<int>{1, 1}));
  EXPECT_TRUE(IsPermutation(std::vector<int>{}));
  EXPECT_FALSE(IsPermutation(std::vector<int>{0, 1}));
  EXPECT_FALSE(IsPermutation(std::vector<int>{1, 3}));
}

// Clarke pivot by enumeration: pays[j] = max over permutations of the
// others' weight minus the others' weight at the chosen matching.
std::vector<Rational> ClarkeOracle(const WeightMatrix& w, const std::vector<int>& alloc) {
  const int m = static_cast<int>(w.size());
  std::vector<Rational> pays;
  for (int j = 0; j < m; ++j) {
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 1);
    std::optional<Rational> best;
    do {
      Rational others;
      for (int b = 0; b < m; ++b) {
        if (b != j) others += w[b][perm[b] - 1];
      }
      if (!best || *best < others) best = others;
    } while (std::next_permutation(perm.begin(), perm.end()));
    Rational chosen;
    for (int b = 0; b < m; ++b) {
      if (b != j) chosen += w[b][alloc[b] - 1];
    }
    pays.push_back(*best - chosen);
  }
  return pays;
}

class VcgMatchingPropertyTest : public ::testing::TestWithParam<int> {};

TEST_P(VcgMatchingPropertyTest, PermutationPaymentsAndTruth) {
  const int m = GetParam();
  std::mt19937_64 rng(500 + m);
  for (int trial = 0; trial < 200; ++trial) {
    const bool coarse = trial % 2 == 0;
    const WeightMatrix w = RandomMatrix(rng, m, coarse ? 2 : 20, coarse ? 2 : 9);
    const MatchingResult r = VcgMatching(w);
    ASSERT_TRUE(IsPermutation(r.alloc));
    EXPECT_EQ(r.pays, ClarkeOracle(w, r.alloc));
    for (const Rational& p : r.pays) EXPECT_GE(p, Rational(0));

    const int j = static_cast<int>(rng() % m);
    WeightMatrix lie = w;
    lie[j] = RandomMatrix(rng, m, coarse ? 2 : 20, coarse ? 2 : 9)[0];
    const MatchingResult d = VcgMatching(lie);
    EXPECT_GE(w[j][r.alloc[j] - 1] - r.pays[j], w[j][d.alloc[j] - 1] - d.pays[j]);
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, VcgMatchingPropertyTest, ::testing::Range(1, 7));

TEST(VcgMatchingTest, LargeMarketUsesFastSolverConsistently) {
  std::mt19937_64 rng(8);
  const WeightMatrix w = RandomMatrix(rng, 12, 40, 6);
  const MatchingResult r = VcgMatching(w);
  ASSERT_TRUE(IsPermutation(r.alloc));
  EXPECT_EQ(AssignmentWeight(w, r.alloc), MaxWeightAssignmentHungarian(w).weight);
  const Rational total = AssignmentWeight(w, r.alloc);
  for (int j = 1; j <= 12; ++j) {
    EXPECT_EQ(r.pays[j - 1], MaxWeightWithoutBuyer(w, j) - (total - w[j - 1][r.alloc[j - 1] - 1]));
    EXPECT_GE(r.pays[j - 1], Rational(0));
  }
}

}  // namespace
}  // namespace mechcheck
