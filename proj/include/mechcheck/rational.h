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

#ifndef MECHCHECK_RATIONAL_H_
#define MECHCHECK_RATIONAL_H_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace mechcheck {

// Exact rational number over arbitrary-precision integers. Always kept in
// lowest terms with a positive denominator, so structural equality is value
// equality.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);

  // Accepts "p/q" or an integer "p", optional leading '-'. Throws
  // MechError(kParseError) on anything else, including q == 0.
  static Rational Parse(std::string_view text);

  // Exact binary value of a finite double.
  static Rational FromDouble(double value);

  // Smallest multiple of 1/denominator that is >= value. Used to publish
  // floating-point bounds as exact, conservative rationals.
  static Rational CeilTo(double value, long denominator);

  // "p/q", or "p" when q == 1.
  std::string ToString() const;
  double ToDouble() const { return value_.get_d(); }

  std::string Numerator() const { return value_.get_num().get_str(); }
  std::string Denominator() const { return value_.get_den().get_str(); }
  int Sign() const { return sgn(value_); }
  bool IsZero() const { return Sign() == 0; }

  Rational& operator+=(const Rational& other) {
    value_ += other.value_;
    return *this;
  }
  Rational& operator-=(const Rational& other) {
    value_ -= other.value_;
    return *this;
  }
  Rational& operator*=(const Rational& other) {
    value_ *= other.value_;
    return *this;
  }
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.value_ = -a.value_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  const mpq_class& raw() const { return value_; }

 private:
  mpq_class value_;
};

Rational Abs(const Rational& value);
Rational Min(const Rational& a, const Rational& b);
Rational Max(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace mechcheck

#endif  // MECHCHECK_RATIONAL_H_
