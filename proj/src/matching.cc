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

#include "mechcheck/matching.h"

#include <functional>
#include <optional>
#include <string>

#include "mechcheck/error.h"

namespace mechcheck {
namespace {

struct HungarianSolution {
  std::vector<int> goods;  // 0-based column per row
  std::vector<Rational> row_potential;
  std::vector<Rational> col_potential;
};

// Minimum-cost assignment of every row to a distinct column, rows <= cols.
// Potential-based shortest augmenting paths; all arithmetic exact.
HungarianSolution SolveMinCost(const WeightMatrix& cost, int rows, int cols) {
  std::vector<Rational> u(rows + 1), v(cols + 1);
  std::vector<int> match(cols + 1, 0), way(cols + 1, 0);
  for (int i = 1; i <= rows; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<std::optional<Rational>> minv(cols + 1);
    std::vector<bool> used(cols + 1, false);
    do {
      used[j0] = true;
      const int i0 = match[j0];
      std::optional<Rational> delta;
      int j1 = 0;
      for (int j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        Rational cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (!minv[j] || cur < *minv[j]) {
          minv[j] = std::move(cur);
          way[j] = j0;
        }
        if (!delta || *minv[j] < *delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[match[j]] += *delta;
          v[j] -= *delta;
        } else if (minv[j]) {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  HungarianSolution sol;
  sol.goods.assign(rows, -1);
  for (int j = 1; j <= cols; ++j) {
    if (match[j] != 0) sol.goods[match[j] - 1] = j - 1;
  }
  sol.row_potential.assign(u.begin() + 1, u.end());
  sol.col_potential.assign(v.begin() + 1, v.end());
  return sol;
}

WeightMatrix Negated(const WeightMatrix& w) {
  WeightMatrix out = w;
  for (auto& row : out)
    for (auto& x : row) x = -x;
  return out;
}

// Kuhn's augmenting-path search restricted to the edges in `adj`.
bool TryAugment(int buyer, const std::vector<std::vector<int>>& adj,
                std::vector<int>& owner, std::vector<bool>& seen) {
  for (int g : adj[buyer]) {
    if (seen[g]) continue;
    seen[g] = true;
    if (owner[g] < 0 || TryAugment(owner[g], adj, owner, seen)) {
      owner[g] = buyer;
      return true;
    }
  }
  return false;
}

bool HasPerfectMatching(const std::vector<std::vector<int>>& adj,
                        const std::vector<int>& buyers, int num_goods) {
  std::vector<int> owner(num_goods, -1);
  for (int b : buyers) {
    std::vector<bool> seen(num_goods, false);
    if (!TryAugment(b, adj, owner, seen)) return false;
  }
  return true;
}

}  // namespace

void RequireSquare(const WeightMatrix& w) {
  for (const auto& row : w) {
    if (row.size() != w.size()) {
      throw MechError(ErrorKind::kNonSquare,
                      "weight matrix has " + std::to_string(w.size()) +
                          " rows but a row of length " +
                          std::to_string(row.size()));
    }
  }
}

Rational AssignmentWeight(const WeightMatrix& w, std::span<const int> goods) {
  Rational total;
  for (std::size_t b = 0; b < goods.size(); ++b) total += w[b][goods[b] - 1];
  return total;
}

Assignment MaxWeightAssignmentBruteForce(const WeightMatrix& w) {
  RequireSquare(w);
  const int m = static_cast<int>(w.size());
  std::vector<int> current(m), best_goods;
  std::vector<bool> used(m, false);
  std::optional<Rational> best;
  std::vector<Rational> partial(m + 1);
  // Lexicographic DFS: the first permutation reaching a weight is kept, so
  // strict improvement yields the smallest optimal permutation.
  std::function<void(int)> dfs = [&](int b) {
    if (b == m) {
      if (!best || *best < partial[m]) {
        best = partial[m];
        best_goods = current;
      }
      return;
    }
    for (int g = 0; g < m; ++g) {
      if (used[g]) continue;
      used[g] = true;
      current[b] = g + 1;
      partial[b + 1] = partial[b] + w[b][g];
      dfs(b + 1);
      used[g] = false;
    }
  };
  dfs(0);
  return Assignment{best_goods, best.value_or(Rational())};
}

Assignment MaxWeightAssignmentHungarian(const WeightMatrix& w) {
  RequireSquare(w);
  const int m = static_cast<int>(w.size());
  if (m == 0) return Assignment{{}, Rational()};
  const WeightMatrix cost = Negated(w);
  const HungarianSolution sol = SolveMinCost(cost, m, m);

  // Every optimal permutation uses only edges that are tight for the optimal
  // duals, and every perfect matching of tight edges is optimal.
  std::vector<std::vector<int>> tight(m);
  for (int b = 0; b < m; ++b) {
    for (int g = 0; g < m; ++g) {
      if ((cost[b][g] - sol.row_potential[b] - sol.col_potential[g]).IsZero()) {
        tight[b].push_back(g);
      }
    }
  }
  std::vector<int> goods(m, -1);
  std::vector<bool> taken(m, false);
  for (int b = 0; b < m; ++b) {
    for (int g : tight[b]) {
      if (taken[g]) continue;
      std::vector<std::vector<int>> rest(m);
      std::vector<int> remaining;
      for (int b2 = b + 1; b2 < m; ++b2) {
        remaining.push_back(b2);
        for (int g2 : tight[b2]) {
          if (!taken[g2] && g2 != g) rest[b2].push_back(g2);
        }
      }
      if (HasPerfectMatching(rest, remaining, m)) {
        goods[b] = g + 1;
        taken[g] = true;
        break;
      }
    }
  }
  return Assignment{goods, AssignmentWeight(w, goods)};
}

Rational MaxWeightWithoutBuyer(const WeightMatrix& w, int buyer) {
  RequireSquare(w);
  const int m = static_cast<int>(w.size());
  if (buyer < 1 || buyer > m) {
    throw MechError(ErrorKind::kBadSlot, "buyer " + std::to_string(buyer));
  }
  if (m == 1) return Rational();
  WeightMatrix cost;
  for (int b = 0; b < m; ++b) {
    if (b == buyer - 1) continue;
    cost.push_back(w[b]);
  }
  const WeightMatrix neg = Negated(cost);
  const HungarianSolution sol = SolveMinCost(neg, m - 1, m);
  Rational total;
  for (int b = 0; b < m - 1; ++b) total += cost[b][sol.goods[b]];
  return total;
}

}  // namespace mechcheck
