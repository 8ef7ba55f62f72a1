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

#include <cmath>
#include <string>

#include "mechcheck/error.h"

namespace mechcheck {
namespace {

bool IsDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) {
    throw MechError(ErrorKind::kParseError, "zero denominator");
  }
  value_ = mpq_class(numerator, 1);
  value_ /= mpq_class(denominator, 1);
}

Rational Rational::Parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : body.substr(slash + 1);
  if (!IsDigits(num) || !IsDigits(den)) {
    throw MechError(ErrorKind::kParseError,
                    "not a rational: \"" + std::string(text) + "\"");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw MechError(ErrorKind::kParseError,
                    "zero denominator in \"" + std::string(text) + "\"");
  }
  Rational r;
  r.value_ = mpq_class(negative ? mpz_class(-n) : n, d);
  r.value_.canonicalize();
  return r;
}

Rational Rational::FromDouble(double value) {
  Rational r;
  r.value_ = mpq_class(value);
  return r;
}

Rational Rational::CeilTo(double value, long denominator) {
  const double scaled = std::ceil(value * static_cast<double>(denominator));
  Rational r;
  r.value_ = mpq_class(mpz_class(scaled), mpz_class(denominator));
  r.value_.canonicalize();
  return r;
}

std::string Rational::ToString() const { return value_.get_str(10); }

Rational& Rational::operator/=(const Rational& other) {
  if (other.IsZero()) {
    throw std::domain_error("Rational division by zero");
  }
  value_ /= other.value_;
  return *this;
}

Rational Abs(const Rational& value) { return value.Sign() < 0 ? -value : value; }
Rational Min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational Max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& value) {
  return os << value.ToString();
}

}  // namespace mechcheck
