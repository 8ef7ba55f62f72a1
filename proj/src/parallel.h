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

#ifndef MECHCHECK_SRC_PARALLEL_H_
#define MECHCHECK_SRC_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <thread>
#include <type_traits>
#include <vector>

namespace mechcheck::internal {

// Evaluates fn(i) for i in [0, count) on up to `jobs` threads and returns the
// results in index order. Work assignment never influences the results, so
// the output is identical for every job count.
template <typename Fn>
auto ParallelMap(int jobs, std::size_t count, Fn fn) {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<R> results(count);
  std::vector<std::exception_ptr> errors(count);
  const std::size_t workers = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(jobs, 1)), 1, std::max<std::size_t>(count, 1));
  auto run = [&](std::size_t w) {
    for (std::size_t i = w; i < count; i += workers) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

// Splits [0, total) into at most `max_chunks` contiguous ranges. The split
// depends only on its arguments, never on the worker count.
struct Range {
  std::int64_t begin = 0;
  std::int64_t end = 0;
};

inline std::vector<Range> SplitRange(std::int64_t total,
                                     std::int64_t max_chunks = 256) {
  std::vector<Range> out;
  if (total <= 0) return out;
  const std::int64_t chunks = std::min(total, max_chunks);
  const std::int64_t base = total / chunks;
  const std::int64_t extra = total % chunks;
  std::int64_t at = 0;
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::int64_t len = base + (c < extra ? 1 : 0);
    out.push_back(Range{at, at + len});
    at += len;
  }
  return out;
}

inline std::int64_t SaturatingMul(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::int64_t>::max() / b) {
    return std::numeric_limits<std::int64_t>::max();
  }
  return a * b;
}

inline std::int64_t SaturatingAdd(std::int64_t a, std::int64_t b) {
  if (a > std::numeric_limits<std::int64_t>::max() - b) {
    return std::numeric_limits<std::int64_t>::max();
  }
  return a + b;
}

inline std::int64_t SaturatingPow(std::int64_t base, std::int64_t exp) {
  std::int64_t out = 1;
  for (std::int64_t i = 0; i < exp; ++i) out = SaturatingMul(out, base);
  return out;
}

// splitmix64; derives independent per-task seeds from the user seed.
inline std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace mechcheck::internal

#endif  // MECHCHECK_SRC_PARALLEL_H_
