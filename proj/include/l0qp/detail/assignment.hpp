#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace l0qp::detail {

// Minimum-cost perfect assignment on a dense square matrix (Hungarian method
// with row-by-row augmentation and potentials), O(n^3).
// Returns col_of_row.
inline std::vector<std::size_t> min_cost_assignment(
    const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based internally; column 0 is the virtual start.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> row_of_col(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of_col[j0];
      double delta = kInf;
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
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> col_of_row(n, 0);
  for (std::size_t j = 1; j <= n; ++j) col_of_row[row_of_col[j] - 1] = j - 1;
  return col_of_row;
}

// Maximum-weight (not necessarily perfect) bipartite matching. weight[i][j]
// <= 0 means "no edge". Returns partner[i] = j or npos.
inline std::vector<std::size_t> max_weight_bipartite_matching(
    const std::vector<std::vector<double>>& weight) {
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  const std::size_t n = weight.size();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (weight[i][j] > 0.0) cost[i][j] = -weight[i][j];
    }
  }
  auto col = min_cost_assignment(cost);
  std::vector<std::size_t> partner(n, npos);
  for (std::size_t i = 0; i < n; ++i) {
    if (weight[i][col[i]] > 0.0) partner[i] = col[i];
  }
  return partner;
}

}  // namespace l0qp::detail
