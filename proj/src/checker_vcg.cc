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

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "checker_common.h"
#include "mechcheck/checker.h"
#include "mechcheck/error.h"
#include "parallel.h"

namespace mechcheck {

using internal::Tally;

namespace internal {

void MergeTallies(const std::vector<Tally>& tallies, CheckReport& report) {
  for (const Tally& t : tallies) {
    report.stats.instances += t.instances;
    report.stats.violations += t.violations;
    for (const Witness& w : t.witnesses) {
      if (report.witnesses.size() < kMaxWitnesses) report.witnesses.push_back(w);
    }
  }
  report.verdict = report.witnesses.empty() ? Verdict::kPass : Verdict::kFail;
}

std::string RowText(const std::vector<Rational>& row) {
  std::string s = "[";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) s += ",";
    s += row[i].ToString();
  }
  return s + "]";
}

std::string MatrixText(const WeightMatrix& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += RowText(w[i]);
  }
  return s + "]";
}

void RequireBudget(std::int64_t cost, const CheckConfig& cfg,
                   const std::string& what) {
  if (cfg.mode == Mode::kExact && cost > cfg.budget) {
    throw MechError(ErrorKind::kBudgetExceeded,
                    what + " needs about " + std::to_string(cost) +
                        " entries, budget is " + std::to_string(cfg.budget) +
                        "; rerun with --mode mc or a larger --budget");
  }
}

}  // namespace internal

namespace {

using internal::MatrixText;
using internal::RowText;

std::string_view kVerdictNames[] = {"pass", "fail", "estimated"};

// Mixed-radix indexing of bidder picks, bidder 0 most significant.
struct PickIndexer {
  std::vector<std::int64_t> radix;
  std::vector<std::int64_t> stride;
  std::int64_t total = 1;

  explicit PickIndexer(const ValueFamily& f) {
    const std::size_t k = f.candidates.size();
    radix.resize(k);
    stride.resize(k);
    for (std::size_t j = k; j-- > 0;) {
      radix[j] = static_cast<std::int64_t>(f.candidates[j].size());
      stride[j] = total;
      total = internal::SaturatingMul(total, radix[j]);
    }
  }
  std::int64_t Pick(std::int64_t index, std::size_t j) const {
    return (index / stride[j]) % radix[j];
  }
  std::int64_t Replace(std::int64_t index, std::size_t j,
                       std::int64_t pick) const {
    return index + (pick - Pick(index, j)) * stride[j];
  }
};

VcgOutcome RunProfile(const ValueFamily& f, const PickIndexer& idx,
                      std::int64_t profile, PaymentRule rule) {
  std::vector<Outcome> range;
  for (std::size_t r = 0; r < f.range.size(); ++r) {
    range.push_back(Outcome{static_cast<int>(r)});
  }
  std::vector<ValueFunction> values;
  for (std::size_t j = 0; j < f.candidates.size(); ++j) {
    const auto& row = f.candidates[j][idx.Pick(profile, j)];
    values.emplace_back([&row](Outcome o) { return row[o.id]; });
  }
  return VcgGeneral(values, range, rule);
}

KeyValues ValueWitnessInputs(const ValueFamily& f, const PickIndexer& idx,
                             std::int64_t profile, std::size_t j,
                             std::int64_t deviation) {
  std::string picks = "[";
  for (std::size_t b = 0; b < f.candidates.size(); ++b) {
    if (b) picks += ",";
    picks += RowText(f.candidates[b][idx.Pick(profile, b)]);
  }
  picks += "]";
  return {{"family", "general/" + std::to_string(f.candidates.size()) + "-bidder"},
          {"deviator", std::to_string(j + 1)},
          {"true_values", picks},
          {"deviation", RowText(f.candidates[j][deviation])}};
}

// Utility of bidder j under its true values `truth` at a VCG result.
Rational GeneralUtility(const std::vector<Rational>& truth,
                        const VcgOutcome& out, std::size_t j) {
  return truth[out.outcome.id] - out.prices[j];
}

void CheckValueFamilyExact(const ValueFamily& f, PaymentRule rule,
                           const CheckConfig& cfg, CheckReport& report) {
  const PickIndexer idx(f);
  const auto chunks = internal::SplitRange(idx.total);
  const auto results = internal::ParallelMap(
      cfg.jobs, chunks.size(), [&](std::size_t c) {
        std::vector<VcgOutcome> out;
        for (std::int64_t p = chunks[c].begin; p < chunks[c].end; ++p) {
          out.push_back(RunProfile(f, idx, p, rule));
        }
        return out;
      });
  std::vector<VcgOutcome> by_profile;
  for (const auto& r : results) by_profile.insert(by_profile.end(), r.begin(), r.end());

  const auto tallies = internal::ParallelMap(
      cfg.jobs, chunks.size(), [&](std::size_t c) {
        Tally t;
        for (std::int64_t p = chunks[c].begin; p < chunks[c].end; ++p) {
          for (std::size_t j = 0; j < f.candidates.size(); ++j) {
            const auto& truth = f.candidates[j][idx.Pick(p, j)];
            const Rational left = GeneralUtility(truth, by_profile[p], j);
            for (std::int64_t d = 0; d < idx.radix[j]; ++d) {
              ++t.instances;
              const Rational right =
                  GeneralUtility(truth, by_profile[idx.Replace(p, j, d)], j);
              if (left < right) {
                t.Add(Witness{ValueWitnessInputs(f, idx, p, j, d), left, right,
                              left - right});
              }
            }
          }
        }
        return t;
      });
  internal::MergeTallies(tallies, report);
}

// Row-major mixed-radix indexing of an enumerated matrix family.
struct MatrixIndexer {
  int size;
  std::int64_t base;
  std::int64_t row_radix;  // base^size
  std::int64_t total;

  explicit MatrixIndexer(const MatrixFamily& f)
      : size(f.size),
        base(static_cast<std::int64_t>(f.entries.size())),
        row_radix(internal::SaturatingPow(base, f.size)),
        total(internal::SaturatingPow(base, static_cast<std::int64_t>(f.size) * f.size)) {}

  std::int64_t RowStride(int row) const {
    return internal::SaturatingPow(row_radix, size - 1 - row);
  }
  std::int64_t Row(std::int64_t index, int row) const {
    return (index / RowStride(row)) % row_radix;
  }
  std::int64_t ReplaceRow(std::int64_t index, int row, std::int64_t value) const {
    return index + (value - Row(index, row)) * RowStride(row);
  }
  // Entry digit of (row, col).
  std::int64_t Digit(std::int64_t index, int row, int col) const {
    std::int64_t r = Row(index, row);
    for (int c = size - 1; c > col; --c) r /= base;
    return r % base;
  }
  WeightMatrix Matrix(const MatrixFamily& f, std::int64_t index) const {
    WeightMatrix w(size, std::vector<Rational>(size));
    for (int b = 0; b < size; ++b)
      for (int g = 0; g < size; ++g) w[b][g] = f.entries[Digit(index, b, g)];
    return w;
  }
  std::vector<Rational> RowValues(const MatrixFamily& f, std::int64_t row_value) const {
    std::vector<Rational> row(size);
    for (int g = size - 1; g >= 0; --g) {
      row[g] = f.entries[row_value % base];
      row_value /= base;
    }
    return row;
  }
};

KeyValues MatrixWitnessInputs(const std::string& family, const WeightMatrix& truth,
                              int j, const std::vector<Rational>& deviation) {
  return {{"family", family},
          {"deviator", std::to_string(j + 1)},
          {"true_weights", MatrixText(truth)},
          {"deviation_row", RowText(deviation)}};
}

std::string FamilyName(const MatrixFamily& f) {
  return "matching/" + std::to_string(f.size) + "x" + std::to_string(f.size);
}

void CheckMatrixFamilyExact(const MatrixFamily& f, PaymentRule rule,
                            const CheckConfig& cfg, CheckReport& report) {
  const MatrixIndexer idx(f);
  const int s = f.size;
  const auto chunks = internal::SplitRange(idx.total);
  struct Solved {
    std::vector<int> alloc;          // flattened, s per matrix
    std::vector<Rational> pays;      // flattened, s per matrix
  };
  const auto solved = internal::ParallelMap(
      cfg.jobs, chunks.size(), [&](std::size_t c) {
        Solved out;
        for (std::int64_t a = chunks[c].begin; a < chunks[c].end; ++a) {
          MatchingResult r = VcgMatching(idx.Matrix(f, a), rule);
          out.alloc.insert(out.alloc.end(), r.alloc.begin(), r.alloc.end());
          out.pays.insert(out.pays.end(), r.pays.begin(), r.pays.end());
        }
        return out;
      });
  std::vector<int> alloc;
  std::vector<Rational> pays;
  for (const auto& part : solved) {
    alloc.insert(alloc.end(), part.alloc.begin(), part.alloc.end());
    pays.insert(pays.end(), part.pays.begin(), part.pays.end());
  }

  const auto tallies = internal::ParallelMap(
      cfg.jobs, chunks.size(), [&](std::size_t c) {
        Tally t;
        std::vector<Rational> threshold(s);
        for (std::int64_t a = chunks[c].begin; a < chunks[c].end; ++a) {
          for (int j = 0; j < s; ++j) {
            const std::size_t at = static_cast<std::size_t>(a) * s + j;
            const Rational left =
                f.entries[idx.Digit(a, j, alloc[at] - 1)] - pays[at];
            // Deviation to b wins iff truth[j][alloc_b] - pay_b > left, i.e.
            // pay_b < truth[j][g] - left for g = alloc_b.
            for (int g = 0; g < s; ++g) {
              threshold[g] = f.entries[idx.Digit(a, j, g)] - left;
            }
            for (std::int64_t r = 0; r < idx.row_radix; ++r) {
              ++t.instances;
              const std::size_t bt =
                  static_cast<std::size_t>(idx.ReplaceRow(a, j, r)) * s + j;
              if (pays[bt] < threshold[alloc[bt] - 1]) {
                const Rational right =
                    f.entries[idx.Digit(a, j, alloc[bt] - 1)] - pays[bt];
                t.Add(Witness{MatrixWitnessInputs(FamilyName(f), idx.Matrix(f, a), j,
                                                  idx.RowValues(f, r)),
                              left, right, left - right});
              }
            }
          }
        }
        return t;
      });
  internal::MergeTallies(tallies, report);
}

void CheckExplicitMatrices(const std::vector<WeightMatrix>& matrices,
                           PaymentRule rule, const CheckConfig& cfg,
                           CheckReport& report) {
  for (const auto& w : matrices) RequireSquare(w);
  const auto solved = internal::ParallelMap(
      cfg.jobs, matrices.size(),
      [&](std::size_t i) { return VcgMatching(matrices[i], rule); });
  Tally t;
  std::size_t max_size = 0;
  for (const auto& w : matrices) max_size = std::max(max_size, w.size());
  for (std::size_t j = 0; j < max_size; ++j) {
    // Matrices that agree outside row j can be deviations of each other.
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < matrices.size(); ++i) {
      const auto& w = matrices[i];
      if (j >= w.size()) continue;
      std::string key = std::to_string(w.size()) + "|";
      for (std::size_t b = 0; b < w.size(); ++b) {
        key += b == j ? "*" : RowText(w[b]);
        key += ";";
      }
      groups[key].push_back(i);
    }
    for (const auto& [key, members] : groups) {
      for (std::size_t a : members) {
        const auto& truth = matrices[a][j];
        const Rational left =
            truth[solved[a].alloc[j] - 1] - solved[a].pays[j];
        for (std::size_t b : members) {
          ++t.instances;
          const Rational right =
              truth[solved[b].alloc[j] - 1] - solved[b].pays[j];
          if (left < right) {
            t.Add(Witness{MatrixWitnessInputs("explicit", matrices[a],
                                              static_cast<int>(j), matrices[b][j]),
                          left, right, left - right});
          }
        }
      }
    }
  }
  internal::MergeTallies({t}, report);
}

// Monte Carlo: random (instance, deviator, deviation) triples.
void SampleValueFamily(const ValueFamily& f, PaymentRule rule,
                       std::int64_t samples, std::mt19937_64& rng, Tally& t) {
  const PickIndexer idx(f);
  std::uniform_int_distribution<std::int64_t> pick_profile(0, idx.total - 1);
  std::uniform_int_distribution<std::size_t> pick_bidder(0, f.candidates.size() - 1);
  for (std::int64_t n = 0; n < samples; ++n) {
    const std::int64_t p = pick_profile(rng);
    const std::size_t j = pick_bidder(rng);
    std::uniform_int_distribution<std::int64_t> pick_dev(0, idx.radix[j] - 1);
    const std::int64_t d = pick_dev(rng);
    const auto& truth = f.candidates[j][idx.Pick(p, j)];
    const Rational left = GeneralUtility(truth, RunProfile(f, idx, p, rule), j);
    const Rational right = GeneralUtility(
        truth, RunProfile(f, idx, idx.Replace(p, j, d), rule), j);
    ++t.instances;
    if (left < right) {
      t.Add(Witness{ValueWitnessInputs(f, idx, p, j, d), left, right, left - right});
    }
  }
}

void SampleMatrixFamily(const MatrixFamily& f, PaymentRule rule,
                        std::int64_t samples, std::mt19937_64& rng, Tally& t) {
  const MatrixIndexer idx(f);
  std::uniform_int_distribution<std::int64_t> pick_matrix(0, idx.total - 1);
  std::uniform_int_distribution<int> pick_row(0, f.size - 1);
  std::uniform_int_distribution<std::int64_t> pick_dev(0, idx.row_radix - 1);
  for (std::int64_t n = 0; n < samples; ++n) {
    const std::int64_t a = pick_matrix(rng);
    const int j = pick_row(rng);
    const std::int64_t r = pick_dev(rng);
    const WeightMatrix truth = idx.Matrix(f, a);
    const MatchingResult ra = VcgMatching(truth, rule);
    const MatchingResult rb = VcgMatching(idx.Matrix(f, idx.ReplaceRow(a, j, r)), rule);
    const Rational left = truth[j][ra.alloc[j] - 1] - ra.pays[j];
    const Rational right = truth[j][rb.alloc[j] - 1] - rb.pays[j];
    ++t.instances;
    if (left < right) {
      t.Add(Witness{MatrixWitnessInputs(FamilyName(f), truth, j, idx.RowValues(f, r)),
                    left, right, left - right});
    }
  }
}

bool GridEmpty(const VcgGrid& grid) {
  return grid.value_families.empty() && grid.matrix_families.empty() &&
         grid.matrices.empty();
}

}  // namespace

std::string_view VerdictName(Verdict v) {
  return kVerdictNames[static_cast<int>(v)];
}

ValueFamily SingleItemFamily(int bidders, const std::vector<Rational>& values) {
  ValueFamily f;
  for (int k = 1; k <= bidders; ++k) f.range.push_back("to" + std::to_string(k));
  f.candidates.resize(bidders);
  for (int j = 0; j < bidders; ++j) {
    for (const Rational& x : values) {
      std::vector<Rational> row(bidders);
      row[j] = x;
      f.candidates[j].push_back(std::move(row));
    }
  }
  return f;
}

std::int64_t EstimateGridCost(const VcgGrid& grid) {
  std::int64_t cost = static_cast<std::int64_t>(grid.matrices.size());
  for (const auto& f : grid.value_families) {
    cost = internal::SaturatingAdd(cost, PickIndexer(f).total);
  }
  for (const auto& f : grid.matrix_families) {
    cost = internal::SaturatingAdd(cost, MatrixIndexer(f).total);
  }
  return cost;
}

CheckReport CheckVcgTruth(const VcgGrid& grid, const CheckConfig& cfg) {
  const internal::Stopwatch clock;
  CheckReport report;
  report.property = "vcg-truth";
  if (GridEmpty(grid)) report.stats.notes.emplace_back("empty_grid", "true");
  if (cfg.mode == Mode::kExact) {
    internal::RequireBudget(EstimateGridCost(grid), cfg, "vcg-truth grid");
    std::vector<Tally> parts;
    for (const auto& f : grid.value_families) {
      CheckReport r;
      CheckValueFamilyExact(f, grid.rule, cfg, r);
      parts.push_back(Tally{r.stats.instances, r.stats.violations, r.witnesses});
    }
    for (const auto& f : grid.matrix_families) {
      CheckReport r;
      CheckMatrixFamilyExact(f, grid.rule, cfg, r);
      parts.push_back(Tally{r.stats.instances, r.stats.violations, r.witnesses});
    }
    if (!grid.matrices.empty()) {
      CheckReport r;
      CheckExplicitMatrices(grid.matrices, grid.rule, cfg, r);
      parts.push_back(Tally{r.stats.instances, r.stats.violations, r.witnesses});
    }
    internal::MergeTallies(parts, report);
  } else {
    std::mt19937_64 rng(cfg.seed);
    Tally t;
    for (const auto& f : grid.value_families) {
      SampleValueFamily(f, grid.rule, cfg.samples, rng, t);
    }
    for (const auto& f : grid.matrix_families) {
      SampleMatrixFamily(f, grid.rule, cfg.samples, rng, t);
    }
    if (!grid.matrices.empty()) {
      CheckReport r;
      CheckExplicitMatrices(grid.matrices, grid.rule, cfg, r);
      t.instances += r.stats.instances;
      for (auto& w : r.witnesses) t.Add(w);
    }
    internal::MergeTallies({t}, report);
    report.stats.samples = cfg.samples;
    if (report.verdict == Verdict::kPass) report.verdict = Verdict::kEstimated;
  }
  report.stats.elapsed_seconds = clock.Seconds();
  return report;
}

CheckReport CheckVcgPerm(const VcgGrid& grid, const CheckConfig& cfg,
                         const MatchingSolver& solver) {
  const internal::Stopwatch clock;
  const MatchingSolver solve =
      solver ? solver
             : MatchingSolver([rule = grid.rule](const WeightMatrix& w) {
                 return VcgMatching(w, rule);
               });
  CheckReport report;
  report.property = "vcg-perm";
  if (GridEmpty(grid)) report.stats.notes.emplace_back("empty_grid", "true");
  internal::RequireBudget(EstimateGridCost(grid), cfg, "vcg-perm grid");

  auto check_one = [&](const WeightMatrix& w, Tally& t) {
    ++t.instances;
    const MatchingResult r = solve(w);
    if (r.alloc.size() != w.size() || !IsPermutation(r.alloc)) {
      std::string alloc = "[";
      for (std::size_t i = 0; i < r.alloc.size(); ++i) {
        if (i) alloc += ",";
        alloc += std::to_string(r.alloc[i]);
      }
      alloc += "]";
      t.Add(Witness{{{"weights", MatrixText(w)}, {"alloc", alloc}},
                    Rational(0), Rational(1), Rational(-1)});
    }
  };

  std::vector<Tally> parts;
  for (const auto& f : grid.matrix_families) {
    const MatrixIndexer idx(f);
    const auto chunks = internal::SplitRange(idx.total);
    auto tallies = internal::ParallelMap(cfg.jobs, chunks.size(), [&](std::size_t c) {
      Tally t;
      for (std::int64_t a = chunks[c].begin; a < chunks[c].end; ++a) {
        check_one(idx.Matrix(f, a), t);
      }
      return t;
    });
    parts.insert(parts.end(), tallies.begin(), tallies.end());
  }
  const auto chunks = internal::SplitRange(static_cast<std::int64_t>(grid.matrices.size()));
  auto tallies = internal::ParallelMap(cfg.jobs, chunks.size(), [&](std::size_t c) {
    Tally t;
    for (std::int64_t i = chunks[c].begin; i < chunks[c].end; ++i) {
      check_one(grid.matrices[i], t);
    }
    return t;
  });
  parts.insert(parts.end(), tallies.begin(), tallies.end());
  internal::MergeTallies(parts, report);
  report.stats.elapsed_seconds = clock.Seconds();
  return report;
}

}  // namespace mechcheck
