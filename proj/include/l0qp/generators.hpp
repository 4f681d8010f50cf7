#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include "l0qp/error.hpp"
#include "l0qp/instance.hpp"
#include "l0qp/rng.hpp"

// Random instance families. Every generator is a pure function of its
// arguments; the draw order documented on each function is part of the
// contract so that instances can be reproduced elsewhere from (params, seed).

namespace l0qp {

namespace detail {

// Data-fit plus smoothness objective
//   sum_i (x_i - y_i)^2 + sum_{(i,j) in edges} (x_i - x_j)^2 + mu * sum_i z_i
// written as a'z + c'x + (1/2) x'Qx + offset.
inline Instance smoothing_instance(const std::vector<double>& y,
                                   const std::vector<Edge>& edges, double mu) {
  const std::size_t n = y.size();
  Instance inst;
  inst.n = n;
  inst.a.assign(n, mu);
  inst.c.resize(n);
  std::vector<double> diag(n, 2.0);
  for (const auto& e : edges) {
    diag[e.u] += 2.0;
    diag[e.v] += 2.0;
  }
  inst.offset = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    inst.c[i] = -2.0 * y[i];
    inst.offset += y[i] * y[i];
  }
  for (std::size_t i = 0; i < n; ++i) inst.q.push_back({i, i, diag[i]});
  for (const auto& e : edges) {
    inst.q.push_back({std::min(e.u, e.v), std::max(e.u, e.v), -2.0});
  }
  std::sort(inst.q.begin(), inst.q.end(), [](const auto& l, const auto& r) {
    return std::pair(l.row, l.col) < std::pair(r.row, r.col);
  });
  inst.meta.observations = y;
  inst.meta.big_m = big_m(inst);
  return inst;
}

}  // namespace detail

/// Random tridiagonal instance.
/// Draw order: Q_{i,i+1} ~ U[-2,2] for i = 1..n-1; then the diagonal slack
/// U[0,4] for i = 1..n (Q_ii = |Q_{i,i-1}| + |Q_{i,i+1}| + slack); then
/// c_i ~ U[-10,3]; then a_i ~ U[0,1].
inline Instance gen_tridiagonal(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::kInvalidArgument, "n must be >= 1");
  CounterRng rng(seed);
  std::vector<double> off(n - 1);
  for (auto& v : off) v = rng.uniform(-2.0, 2.0);
  Instance inst;
  inst.n = n;
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? std::abs(off[i - 1]) : 0.0;
    const double right = i + 1 < n ? std::abs(off[i]) : 0.0;
    diag[i] = left + right + rng.uniform(0.0, 4.0);
  }
  inst.c.resize(n);
  for (auto& v : inst.c) v = rng.uniform(-10.0, 3.0);
  inst.a.resize(n);
  for (auto& v : inst.a) v = rng.uniform(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    inst.q.push_back({i, i, diag[i]});
    if (i + 1 < n && off[i] != 0.0) inst.q.push_back({i, i + 1, off[i]});
  }
  return inst;
}

/// Sparse smooth signal observed with Gaussian noise, as a tridiagonal
/// smoothing instance (unit data-fit and smoothness weights, a_i = mu).
///
/// Ground truth: round(density * n) active samples split into
/// B = max(1, round(n / 100)) bumps of equal length L (last bump truncated).
/// Draw order per bump: start ~ U{0..n-L}, amplitude ~ U[1,3], sign from
/// U[0,1] < 0.5 (negative). Bump shape amplitude * sin(pi (t+1) / (L+1)),
/// t = 0..L-1; overlapping bumps add. Then noise: y_t = truth_t + sigma * N(0,1)
/// for t = 1..n (one normal per sample, always drawn).
inline Instance gen_signal1d(std::size_t n, double sigma, double mu,
                             std::uint64_t seed, double density = 0.1) {
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "n must be >= 2");
  if (sigma < 0) throw Error(ErrorKind::kInvalidArgument, "sigma must be >= 0");
  CounterRng rng(seed);
  std::vector<double> truth(n, 0.0);
  const auto active =
      static_cast<std::size_t>(std::llround(density * static_cast<double>(n)));
  if (active > 0) {
    const auto bumps = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(static_cast<double>(n) / 100.0)));
    const std::size_t len = std::max<std::size_t>(1, (active + bumps - 1) / bumps);
    std::size_t left = active;
    for (std::size_t b = 0; b < bumps && left > 0; ++b) {
      const std::size_t this_len = std::min(len, left);
      left -= this_len;
      const auto start = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(n - this_len)));
      double amplitude = rng.uniform(1.0, 3.0);
      if (rng.uniform01() < 0.5) amplitude = -amplitude;
      for (std::size_t t = 0; t < this_len; ++t) {
        truth[start + t] += amplitude * std::sin(std::numbers::pi * double(t + 1) /
                                                 double(this_len + 1));
      }
    }
  }
  std::vector<double> y(n);
  for (std::size_t t = 0; t < n; ++t) y[t] = truth[t] + sigma * rng.normal();
  std::vector<Edge> edges;
  for (std::size_t t = 0; t + 1 < n; ++t) edges.push_back({t, t + 1, 1.0});
  return detail::smoothing_instance(y, edges, mu);
}

/// Sparse image on a rows x cols grid (4-neighbour lattice, node r*cols + c),
/// observed with Gaussian noise; unit data-fit and smoothness weights.
///
/// Ground truth: rectangular patches are added until at least
/// round(density * rows * cols) cells are nonzero. Draw order per patch:
/// height ~ U{1..max(1,rows/4)}, width ~ U{1..max(1,cols/4)},
/// top ~ U{0..rows-height}, left ~ U{0..cols-width}, amplitude ~ U[1,2],
/// sign from U[0,1] < 0.5 (negative). Patch cells are overwritten with the
/// amplitude. At most 4 * rows * cols patches are tried. Then noise:
/// y_i = truth_i + sigma * N(0,1) in node order.
inline Instance gen_lattice2d(std::size_t rows, std::size_t cols, double sigma,
                              double mu, std::uint64_t seed,
                              double density = 0.1) {
  if (rows < 2 || cols < 2) {
    throw Error(ErrorKind::kInvalidArgument, "rows and cols must be >= 2");
  }
  if (sigma < 0) throw Error(ErrorKind::kInvalidArgument, "sigma must be >= 0");
  CounterRng rng(seed);
  const std::size_t n = rows * cols;
  std::vector<double> truth(n, 0.0);
  const auto target =
      static_cast<std::size_t>(std::llround(density * static_cast<double>(n)));
  std::size_t active = 0;
  for (std::size_t attempt = 0; active < target && attempt < 4 * n; ++attempt) {
    const auto h = static_cast<std::size_t>(
        rng.uniform_int(1, std::max<std::int64_t>(1, std::int64_t(rows / 4))));
    const auto w = static_cast<std::size_t>(
        rng.uniform_int(1, std::max<std::int64_t>(1, std::int64_t(cols / 4))));
    const auto top =
        static_cast<std::size_t>(rng.uniform_int(0, std::int64_t(rows - h)));
    const auto left =
        static_cast<std::size_t>(rng.uniform_int(0, std::int64_t(cols - w)));
    double amplitude = rng.uniform(1.0, 2.0);
    if (rng.uniform01() < 0.5) amplitude = -amplitude;
    for (std::size_t r = top; r < top + h; ++r) {
      for (std::size_t col = left; col < left + w; ++col) {
        auto& cell = truth[r * cols + col];
        if (cell == 0.0) ++active;
        cell = amplitude;
      }
    }
  }
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = truth[i] + sigma * rng.normal();
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t col = 0; col < cols; ++col) {
      const std::size_t i = r * cols + col;
      if (col + 1 < cols) edges.push_back({i, i + 1, 1.0});
      if (r + 1 < rows) edges.push_back({i, i + cols, 1.0});
    }
  }
  return detail::smoothing_instance(y, edges, mu);
}

/// Random diagonally dominant instance on an Erdos-Renyi support graph:
/// used for property tests of the decomposition.
/// Draw order: for each pair i<j in row-major order, an edge is present when
/// U[0,1] < edge_prob, then its value ~ U[0.2,2] with a sign from
/// U[0,1] < 0.5 (negative); then per node the slack U[0.05,2]
/// (Q_ii = sum_j |Q_ij| + slack); then c_i ~ U[-5,5]; then a_i ~ U[0,3].
inline Instance gen_random_dd(std::size_t n, double edge_prob,
                              std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::kInvalidArgument, "n must be >= 1");
  CounterRng rng(seed);
  Instance inst;
  inst.n = n;
  std::vector<double> row_sum(n, 0.0);
  std::vector<QEntry> off;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform01() < edge_prob) {
        double v = rng.uniform(0.2, 2.0);
        if (rng.uniform01() < 0.5) v = -v;
        off.push_back({i, j, v});
        row_sum[i] += std::abs(v);
        row_sum[j] += std::abs(v);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    inst.q.push_back({i, i, row_sum[i] + rng.uniform(0.05, 2.0)});
  }
  inst.q.insert(inst.q.end(), off.begin(), off.end());
  std::sort(inst.q.begin(), inst.q.end(), [](const auto& l, const auto& r) {
    return std::pair(l.row, l.col) < std::pair(r.row, r.col);
  });
  inst.c.resize(n);
  for (auto& v : inst.c) v = rng.uniform(-5.0, 5.0);
  inst.a.resize(n);
  for (auto& v : inst.a) v = rng.uniform(0.0, 3.0);
  return inst;
}

}  // namespace l0qp
