#pragma once

#include <limits>
#include <vector>

#include "exact/errors.hpp"

namespace exact {

/// Minimum-cost perfect assignment on a square matrix (Hungarian method with
/// potentials, O(n^3)). Returns row -> column.
inline std::vector<std::size_t> solve_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  for (const auto& row : cost) {
    if (row.size() != n) throw ConfigError("assignment matrix must be square");
  }
  if (n == 0) return {};

  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based columns; column 0 is the virtual start of each augmenting path.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> row_to_col(n);
  for (std::size_t j = 1; j <= n; ++j) row_to_col[match[j] - 1] = j - 1;
  return row_to_col;
}

/// Cheapest way to turn set A into set B by matching pairs, deleting the rest
/// of A and inserting the rest of B. pair(i, j), del(i), ins(j) give costs.
template <class Pair, class Del, class Ins>
double min_cost_matching(std::size_t na, std::size_t nb, Pair&& pair, Del&& del, Ins&& ins) {
  // Square matrix: A rows then one dummy row per B element; B columns then
  // one dummy column per A element. A row on a dummy column is a deletion, a
  // dummy row on a B column is an insertion.
  const std::size_t n = na + nb;
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) cost[i][j] = pair(i, j);
    const double d = del(i);
    for (std::size_t k = 0; k < na; ++k) cost[i][nb + k] = d;
  }
  for (std::size_t j = 0; j < nb; ++j) {
    const double c = ins(j);
    for (std::size_t k = 0; k < nb; ++k) cost[na + k][j] = c;
  }
  const auto assign = solve_assignment(cost);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += cost[i][assign[i]];
  return total;
}

}  // namespace exact
