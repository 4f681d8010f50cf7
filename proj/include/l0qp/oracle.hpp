#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "l0qp/error.hpp"
#include "l0qp/instance.hpp"
#include "l0qp/tridiag.hpp"

// Exhaustive solver for small instances: every support is solved as a dense
// unconstrained QP. Slow by design; it is the reference the fast solvers are
// checked against.

namespace l0qp {

inline constexpr std::size_t kOracleMaxN = 20;

struct OracleResult {
  double value = 0.0;
  std::vector<double> x;
  std::vector<int> z;
  std::uint64_t supports_enumerated = 0;
  std::uint64_t singular_supports = 0;
};

namespace detail {

// Dense upper+lower Q as a row-major n x n array.
inline std::vector<double> dense_q(const Instance& inst) {
  const std::size_t n = inst.n;
  std::vector<double> q(n * n, 0.0);
  for (const auto& e : inst.q) {
    q[e.row * n + e.col] = e.value;
    q[e.col * n + e.row] = e.value;
  }
  return q;
}

// Solves the support subsystem by Cholesky. Returns false on a pivot at or
// below kPivotTolerance.
inline bool solve_support(const std::vector<double>& q, std::size_t n,
                          std::span<const double> c,
                          std::span<const std::size_t> support,
                          std::vector<double>& xs) {
  const std::size_t k = support.size();
  std::vector<double> l(k * k, 0.0);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t s = 0; s <= r; ++s) {
      double v = q[support[r] * n + support[s]];
      for (std::size_t t = 0; t < s; ++t) v -= l[r * k + t] * l[s * k + t];
      if (r == s) {
        if (!(v > kPivotTolerance)) return false;
        l[r * k + r] = std::sqrt(v);
      } else {
        l[r * k + s] = v / l[s * k + s];
      }
    }
  }
  xs.assign(k, 0.0);
  for (std::size_t r = 0; r < k; ++r) {
    double v = -c[support[r]];
    for (std::size_t t = 0; t < r; ++t) v -= l[r * k + t] * xs[t];
    xs[r] = v / l[r * k + r];
  }
  for (std::size_t r = k; r-- > 0;) {
    double v = xs[r];
    for (std::size_t t = r + 1; t < k; ++t) v -= l[t * k + r] * xs[t];
    xs[r] = v / l[r * k + r];
  }
  return true;
}

}  // namespace detail

/// Minimizer over x with support inside {i : z_i = 1}, and a'z + c'x + x'Qx/2.
inline std::pair<std::vector<double>, double> fixed_z_qp(const Instance& inst,
                                                         std::span<const int> z) {
  check_structure(inst);
  if (z.size() != inst.n) {
    throw Error(ErrorKind::kInvalidArgument, "indicator vector has wrong length");
  }
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < inst.n; ++i) {
    if (z[i] != 0) support.push_back(i);
  }
  const auto q = detail::dense_q(inst);
  std::vector<double> xs;
  if (!detail::solve_support(q, inst.n, inst.c, support, xs)) {
    throw Error(ErrorKind::kSingularSupport,
                "Q restricted to the support is not positive definite");
  }
  std::vector<double> x(inst.n, 0.0);
  double value = 0.0;
  for (std::size_t r = 0; r < support.size(); ++r) {
    x[support[r]] = xs[r];
    // At the stationary point c'x + x'Qx/2 = c'x/2.
    value += inst.a[support[r]] + 0.5 * inst.c[support[r]] * xs[r];
  }
  return {std::move(x), value};
}

/// Global minimum over all 2^n supports. Supports are visited in
/// lexicographic order of z (z_1 most significant) and only a strictly
/// better value replaces the incumbent, so ties go to the smallest z.
inline OracleResult enumerate(const Instance& inst) {
  check_structure(inst);
  const std::size_t n = inst.n;
  if (n > kOracleMaxN) {
    throw Error(ErrorKind::kTooLarge, "enumeration limited to n <= " +
                                          std::to_string(kOracleMaxN) +
                                          ", got " + std::to_string(n));
  }
  const auto q = detail::dense_q(inst);
  OracleResult best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> support;
  std::vector<double> xs;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t code = 0; code < total; ++code) {
    support.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if ((code >> (n - 1 - i)) & 1U) support.push_back(i);
    }
    ++best.supports_enumerated;
    if (!detail::solve_support(q, n, inst.c, support, xs)) {
      ++best.singular_supports;
      continue;
    }
    double value = 0.0;
    for (std::size_t r = 0; r < support.size(); ++r) {
      value += inst.a[support[r]] + 0.5 * inst.c[support[r]] * xs[r];
    }
    if (value < best.value) {
      best.value = value;
      best.x.assign(n, 0.0);
      best.z.assign(n, 0);
      for (std::size_t r = 0; r < support.size(); ++r) {
        best.x[support[r]] = xs[r];
        best.z[support[r]] = 1;
      }
    }
  }
  return best;
}

}  // namespace l0qp
