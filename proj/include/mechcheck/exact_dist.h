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

#ifndef MECHCHECK_EXACT_DIST_H_
#define MECHCHECK_EXACT_DIST_H_

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "mechcheck/error.h"
#include "mechcheck/rational.h"

namespace mechcheck {

// A finite probability distribution with exact rational masses.
//
// Entries are kept in canonical form: sorted by value, no duplicates, no
// zero masses, masses summing to exactly one. Two distributions describe the
// same law iff their entry vectors are identical, which is what DistEqual
// checks. X must be totally ordered and equality comparable.
template <typename X>
class ExactDist {
 public:
  using Entry = std::pair<X, Rational>;

  // Canonicalizes arbitrary (value, mass) pairs. Throws kNotNormalized when a
  // mass is negative or the total is not exactly one, kEmptySupport when
  // nothing with positive mass remains.
  static ExactDist FromEntries(std::vector<Entry> entries) {
    Rational total;
    for (const auto& [value, mass] : entries) {
      if (mass.Sign() < 0) {
        throw MechError(ErrorKind::kNotNormalized, "negative mass");
      }
      total += mass;
    }
    if (total != Rational(1)) {
      throw MechError(ErrorKind::kNotNormalized,
                      "masses sum to " + total.ToString());
    }
    return FromNormalized(std::move(entries));
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  Rational Mass(const X& value) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), value,
        [](const Entry& e, const X& v) { return e.first < v; });
    if (it == entries_.end() || !(it->first == value)) return Rational();
    return it->second;
  }

  std::vector<X> Support() const {
    std::vector<X> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.first);
    return out;
  }

  friend bool operator==(const ExactDist& a, const ExactDist& b) {
    return a.entries_ == b.entries_;
  }

  // Caller guarantees the masses already sum to one; only canonicalization
  // is applied. Used by the combinators, whose output is normalized by
  // construction.
  static ExactDist FromNormalized(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    std::vector<Entry> merged;
    merged.reserve(entries.size());
    for (auto& e : entries) {
      if (!merged.empty() && merged.back().first == e.first) {
        merged.back().second += e.second;
      } else {
        merged.push_back(std::move(e));
      }
    }
    std::erase_if(merged, [](const Entry& e) { return e.second.IsZero(); });
    if (merged.empty()) {
      throw MechError(ErrorKind::kEmptySupport, "distribution has no mass");
    }
    return ExactDist(std::move(merged));
  }

 private:
  explicit ExactDist(std::vector<Entry> entries)
      : entries_(std::move(entries)) {}

  std::vector<Entry> entries_;
};

template <typename X>
ExactDist<X> Point(X value) {
  std::vector<typename ExactDist<X>::Entry> e;
  e.emplace_back(std::move(value), Rational(1));
  return ExactDist<X>::FromNormalized(std::move(e));
}

template <typename X>
ExactDist<X> Uniform(std::span<const X> values) {
  if (values.empty()) {
    throw MechError(ErrorKind::kEmptySupport, "uniform over empty list");
  }
  const Rational each(1, static_cast<long>(values.size()));
  std::vector<typename ExactDist<X>::Entry> e;
  e.reserve(values.size());
  for (const X& v : values) e.emplace_back(v, each);
  return ExactDist<X>::FromNormalized(std::move(e));
}

template <typename X>
ExactDist<X> Uniform(const std::vector<X>& values) {
  return Uniform(std::span<const X>(values));
}

// Law of total probability: mass(y) = sum_x d(x) * k(x)(y).
template <typename X, typename K>
auto Bind(const ExactDist<X>& d, K&& k) {
  using Result = std::invoke_result_t<K&, const X&>;
  using Y = std::decay_t<decltype(std::declval<Result>().entries()[0].first)>;
  std::vector<typename ExactDist<Y>::Entry> out;
  for (const auto& [x, px] : d.entries()) {
    const ExactDist<Y> inner = k(x);
    for (const auto& [y, py] : inner.entries()) out.emplace_back(y, px * py);
  }
  return ExactDist<Y>::FromNormalized(std::move(out));
}

// Pushforward through a deterministic function.
template <typename X, typename F>
auto Map(const ExactDist<X>& d, F&& f) {
  using Y = std::decay_t<std::invoke_result_t<F&, const X&>>;
  std::vector<typename ExactDist<Y>::Entry> out;
  out.reserve(d.size());
  for (const auto& [x, px] : d.entries()) out.emplace_back(f(x), px);
  return ExactDist<Y>::FromNormalized(std::move(out));
}

// Joint law of independent draws, one per component, in list order.
template <typename X>
ExactDist<std::vector<X>> Product(std::span<const ExactDist<X>> ds) {
  using Tuple = std::vector<X>;
  std::vector<typename ExactDist<Tuple>::Entry> acc;
  acc.emplace_back(Tuple{}, Rational(1));
  for (const ExactDist<X>& d : ds) {
    std::vector<typename ExactDist<Tuple>::Entry> next;
    next.reserve(acc.size() * d.size());
    for (const auto& [prefix, pp] : acc) {
      for (const auto& [x, px] : d.entries()) {
        Tuple t = prefix;
        t.push_back(x);
        next.emplace_back(std::move(t), pp * px);
      }
    }
    acc = std::move(next);
  }
  return ExactDist<Tuple>::FromNormalized(std::move(acc));
}

template <typename X>
ExactDist<std::vector<X>> Product(const std::vector<ExactDist<X>>& ds) {
  return Product(std::span<const ExactDist<X>>(ds));
}

// d^k: k independent copies of d.
template <typename X>
ExactDist<std::vector<X>> Power(const ExactDist<X>& d, int k) {
  return Product(std::vector<ExactDist<X>>(static_cast<std::size_t>(k), d));
}

template <typename X, typename F>
Rational Expectation(const ExactDist<X>& d, F&& f) {
  Rational total;
  for (const auto& [x, px] : d.entries()) total += px * Rational(f(x));
  return total;
}

template <typename X>
bool DistEqual(const ExactDist<X>& a, const ExactDist<X>& b) {
  return a == b;
}

// Draws from an ExactDist. When the common denominator of the masses fits in
// 64 bits, sampling is exact (uniform integer against integer thresholds);
// otherwise cumulative masses are rounded to double.
template <typename X>
class Sampler {
 public:
  explicit Sampler(const ExactDist<X>& d) {
    mpz_class common = 1;
    for (const auto& [x, p] : d.entries()) {
      mpz_lcm(common.get_mpz_t(), common.get_mpz_t(),
              p.raw().get_den_mpz_t());
    }
    exact_ = mpz_sizeinbase(common.get_mpz_t(), 2) <= 63;
    Rational cumulative;
    for (const auto& [x, p] : d.entries()) {
      values_.push_back(x);
      cumulative += p;
      if (exact_) {
        mpz_class scaled = cumulative.raw().get_num() *
                           (common / cumulative.raw().get_den());
        int_thresholds_.push_back(scaled.get_ui());
      } else {
        double_thresholds_.push_back(cumulative.ToDouble());
      }
    }
    denominator_ = exact_ ? common.get_ui() : 0;
  }

  template <typename Rng>
  const X& operator()(Rng& rng) const {
    std::size_t idx = 0;
    if (exact_) {
      std::uniform_int_distribution<std::uint64_t> u(0, denominator_ - 1);
      const std::uint64_t draw = u(rng);
      idx = static_cast<std::size_t>(
          std::upper_bound(int_thresholds_.begin(), int_thresholds_.end(),
                           draw) -
          int_thresholds_.begin());
    } else {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      const double draw = u(rng);
      idx = static_cast<std::size_t>(
          std::upper_bound(double_thresholds_.begin(),
                           double_thresholds_.end(), draw) -
          double_thresholds_.begin());
    }
    return values_[std::min(idx, values_.size() - 1)];
  }

  bool exact() const { return exact_; }

 private:
  std::vector<X> values_;
  bool exact_ = false;
  std::uint64_t denominator_ = 0;
  std::vector<std::uint64_t> int_thresholds_;
  std::vector<double> double_thresholds_;
};

template <typename X, typename Rng>
X Sample(const ExactDist<X>& d, Rng& rng) {
  return Sampler<X>(d)(rng);
}

}  // namespace mechcheck

#endif  // MECHCHECK_EXACT_DIST_H_
