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

#include "mechcheck/rational.h"

#include <sstream>

#include "gtest/gtest.h"
#include "mechcheck/error.h"

namespace mechcheck {
namespace {

TEST(RationalTest, StoredInLowestTerms) {
  const Rational r(6, -4);
  EXPECT_EQ(r.Numerator(), "-3");
  EXPECT_EQ(r.Denominator(), "2");
  EXPECT_EQ(r.ToString(), "-3/2");
  EXPECT_EQ(Rational(4, 2).ToString(), "2");
}

TEST(RationalTest, ZeroDenominatorIsParseError) {
  try {
    Rational(1, 0);
    FAIL() << "expected MechError";
  } catch (const MechError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParseError);
  }
}

TEST(RationalTest, ParsesIntegersAndFractions) {
  EXPECT_EQ(Rational::Parse("3/2"), Rational(3, 2));
  EXPECT_EQ(Rational::Parse("-7"), Rational(-7));
  EXPECT_EQ(Rational::Parse("-2/4"), Rational(-1, 2));
  EXPECT_EQ(Rational::Parse("0"), Rational(0));
}

TEST(RationalTest, RejectsFloatsAndGarbage) {
  for (const char* bad : {"1.5", "", "1/", "/2", "a", "1/0", "1e3", " 1"}) {
    EXPECT_THROW(Rational::Parse(bad), MechError) << bad;
  }
}

TEST(RationalTest, ToStringRoundTrips) {
  for (const Rational& r : {Rational(0), Rational(-5, 3), Rational(22, 7)}) {
    EXPECT_EQ(Rational::Parse(r.ToString()), r);
  }
}

TEST(RationalTest, ArithmeticIsExact) {
  const Rational third(1, 3);
  EXPECT_EQ(third + third + third, Rational(1));
  EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(3, 4), Rational(1, 2));
  EXPECT_EQ(Rational(1, 2) / Rational(1, 4), Rational(2));
  EXPECT_EQ(-Rational(1, 2), Rational(-1, 2));
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(RationalTest, ArbitraryPrecision) {
  Rational x(1);
  for (int i = 0; i < 100; ++i) x = x * Rational(1, 3);
  for (int i = 0; i < 100; ++i) x = x * Rational(3);
  EXPECT_EQ(x, Rational(1));
}

TEST(RationalTest, OrderingAndHelpers) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_EQ(Abs(Rational(-2, 5)), Rational(2, 5));
  EXPECT_EQ(Min(Rational(1), Rational(2)), Rational(1));
  EXPECT_EQ(Max(Rational(1), Rational(2)), Rational(2));
  EXPECT_EQ(Rational(-3).Sign(), -1);
  EXPECT_TRUE(Rational(0).IsZero());
}

TEST(RationalTest, CeilToNeverRoundsDown) {
  const Rational r = Rational::CeilTo(0.1234567891, 1000);
  EXPECT_EQ(r, Rational(124, 1000));
  EXPECT_GE(r.ToDouble(), 0.1234567891);
}

TEST(RationalTest, StreamsAsExactString) {
  std::ostringstream out;
  out << Rational(3, 2);
  EXPECT_EQ(out.str(), "3/2");
}

}  // namespace
}  // namespace mechcheck
