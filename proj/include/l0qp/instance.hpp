#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "l0qp/error.hpp"

namespace l0qp {

/// One stored coefficient of the upper triangle of Q (0-based, row <= col).
struct QEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;

  friend bool operator==(const QEntry&, const QEntry&) = default;
};

/// Generator-side data that is not part of the optimization problem itself.
struct Metadata {
  std::optional<std::vector<double>> observations;  // "y"
  std::optional<double> big_m;                      // "M"

  friend bool operator==(const Metadata&, const Metadata&) = default;
};

/// minimize a'z + c'x + (1/2) x'Qx  s.t.  x_i (1 - z_i) = 0,  z binary.
///
/// Q is symmetric and stored as its upper triangle, so an off-diagonal entry
/// (i, j, v) contributes v * x_i * x_j to the objective and a diagonal entry
/// (i, i, v) contributes (v / 2) * x_i^2. `offset` is a constant that callers
/// add to reported objective values; it never enters the optimization.
struct Instance {
  std::size_t n = 0;
  std::vector<double> a;
  std::vector<double> c;
  std::vector<QEntry> q;
  double offset = 0.0;
  Metadata meta;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// A term weight * (x_i + sign * x_j)^2 of the diagonally dominant split.
struct PairTerm {
  std::size_t i = 0;
  std::size_t j = 0;
  double weight = 0.0;
  int sign = -1;

  friend bool operator==(const PairTerm&, const PairTerm&) = default;
};

/// (1/2) x'Qx == (1/2) sum_i D_i x_i^2 + (1/2) sum_terms w (x_i + s x_j)^2.
struct DDForm {
  std::vector<double> diag_residual;
  std::vector<PairTerm> terms;
};

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected graph with an edge (i, j), i < j, wherever Q_ij != 0.
struct SupportGraph {
  std::size_t n = 0;
  std::vector<Edge> edges;

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : edges) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
  }
};

inline constexpr double kDominanceTolerance = 1e-9;

/// Checks sizes, ordering and uniqueness of the stored triplets.
inline void check_structure(const Instance& inst) {
  if (inst.n == 0) {
    throw Error(ErrorKind::kMalformedInstance, "n must be positive");
  }
  if (inst.a.size() != inst.n || inst.c.size() != inst.n) {
    throw Error(ErrorKind::kMalformedInstance,
                "a and c must have length n = " + std::to_string(inst.n));
  }
  std::vector<std::pair<std::size_t, std::size_t>> keys;
  keys.reserve(inst.q.size());
  for (const auto& e : inst.q) {
    if (e.row >= inst.n || e.col >= inst.n) {
      throw Error(ErrorKind::kMalformedInstance,
                  "Q index out of range (" + std::to_string(e.row + 1) + ", " +
                      std::to_string(e.col + 1) + ")");
    }
    if (e.row > e.col) {
      throw Error(ErrorKind::kNotSymmetricStorage,
                  "lower-triangle entry (" + std::to_string(e.row + 1) + ", " +
                      std::to_string(e.col + 1) + ")",
                  e.row);
    }
    if (!std::isfinite(e.value)) {
      throw Error(ErrorKind::kMalformedInstance, "non-finite Q entry", e.row);
    }
    if (e.row != e.col && e.value == 0.0) {
      throw Error(ErrorKind::kMalformedInstance,
                  "explicit zero off-diagonal entry", e.row);
    }
    keys.emplace_back(e.row, e.col);
  }
  std::sort(keys.begin(), keys.end());
  auto dup = std::adjacent_find(keys.begin(), keys.end());
  if (dup != keys.end()) {
    throw Error(ErrorKind::kNotSymmetricStorage,
                "duplicate entry (" + std::to_string(dup->first + 1) + ", " +
                    std::to_string(dup->second + 1) + ")",
                dup->first);
  }
}

inline std::vector<double> diagonal(const Instance& inst) {
  std::vector<double> d(inst.n, 0.0);
  for (const auto& e : inst.q) {
    if (e.row == e.col) d[e.row] = e.value;
  }
  return d;
}

/// Splits Q into diagonal residuals and signed pairwise squares.
inline DDForm validate(const Instance& inst) {
  check_structure(inst);
  DDForm dd;
  dd.diag_residual = diagonal(inst);
  for (const auto& e : inst.q) {
    if (e.row == e.col) continue;
    const double w = std::abs(e.value);
    dd.diag_residual[e.row] -= w;
    dd.diag_residual[e.col] -= w;
    dd.terms.push_back({e.row, e.col, w, e.value > 0 ? +1 : -1});
  }
  std::sort(dd.terms.begin(), dd.terms.end(), [](const auto& l, const auto& r) {
    return std::pair(l.i, l.j) < std::pair(r.i, r.j);
  });
  for (std::size_t i = 0; i < inst.n; ++i) {
    if (dd.diag_residual[i] < -kDominanceTolerance) {
      throw Error(ErrorKind::kNotDiagonallyDominant,
                  "row " + std::to_string(i + 1) + " has D_ii = " +
                      std::to_string(dd.diag_residual[i]),
                  i);
    }
  }
  return dd;
}

inline SupportGraph support_graph(const Instance& inst) {
  SupportGraph g;
  g.n = inst.n;
  for (const auto& e : inst.q) {
    if (e.row != e.col && e.value != 0.0) {
      g.edges.push_back({e.row, e.col, std::abs(e.value)});
    }
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const auto& l, const auto& r) {
    return std::pair(l.u, l.v) < std::pair(r.u, r.v);
  });
  return g;
}

/// (1/2) x'Qx.
inline double quadratic_form(const Instance& inst, std::span<const double> x) {
  double total = 0.0;
  for (const auto& e : inst.q) {
    if (e.row == e.col) {
      total += 0.5 * e.value * x[e.row] * x[e.row];
    } else {
      total += e.value * x[e.row] * x[e.col];
    }
  }
  return total;
}

/// (1/2) sum D x^2 + (1/2) sum w (x_i + s x_j)^2.
inline double quadratic_form(const DDForm& dd, std::span<const double> x) {
  double total = 0.0;
  for (std::size_t i = 0; i < dd.diag_residual.size(); ++i) {
    total += 0.5 * dd.diag_residual[i] * x[i] * x[i];
  }
  for (const auto& t : dd.terms) {
    const double s = x[t.i] + t.sign * x[t.j];
    total += 0.5 * t.weight * s * s;
  }
  return total;
}

/// a'z + c'x + (1/2) x'Qx, without the offset and without checking x(1-z)=0.
inline double objective(const Instance& inst, std::span<const double> x,
                        std::span<const int> z) {
  double total = quadratic_form(inst, x);
  for (std::size_t i = 0; i < inst.n; ++i) {
    total += inst.a[i] * z[i] + inst.c[i] * x[i];
  }
  return total;
}

inline bool is_permutation_vector(std::span<const std::size_t> pi,
                                  std::size_t n) {
  if (pi.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (auto p : pi) {
    if (p >= n || seen[p]) return false;
    seen[p] = 1;
  }
  return true;
}

/// Reindexes variables: position k of the result is variable pi[k] of `inst`.
/// A solution x of the result maps back through x_orig[pi[k]] = x[k].
inline Instance permute(const Instance& inst, std::span<const std::size_t> pi) {
  if (!is_permutation_vector(pi, inst.n)) {
    throw Error(ErrorKind::kInvalidPermutation,
                "expected a bijection on 0.." + std::to_string(inst.n - 1));
  }
  std::vector<std::size_t> position(inst.n);
  for (std::size_t k = 0; k < inst.n; ++k) position[pi[k]] = k;

  Instance out;
  out.n = inst.n;
  out.offset = inst.offset;
  out.a.resize(inst.n);
  out.c.resize(inst.n);
  for (std::size_t k = 0; k < inst.n; ++k) {
    out.a[k] = inst.a[pi[k]];
    out.c[k] = inst.c[pi[k]];
  }
  out.q.reserve(inst.q.size());
  for (const auto& e : inst.q) {
    auto r = position[e.row];
    auto s = position[e.col];
    if (r > s) std::swap(r, s);
    out.q.push_back({r, s, e.value});
  }
  std::sort(out.q.begin(), out.q.end(), [](const auto& l, const auto& r) {
    return std::pair(l.row, l.col) < std::pair(r.row, r.col);
  });
  out.meta = inst.meta;
  if (out.meta.observations) {
    auto& y = *out.meta.observations;
    std::vector<double> permuted(inst.n);
    for (std::size_t k = 0; k < inst.n; ++k) permuted[k] = y[pi[k]];
    y = std::move(permuted);
  }
  return out;
}

/// M = max_i y_i - min_i y_i from the recorded observations.
inline double big_m(const Instance& inst) {
  if (!inst.meta.observations || inst.meta.observations->empty()) {
    throw Error(ErrorKind::kNoObservations,
                "instance carries no observations; supply M explicitly");
  }
  const auto& y = *inst.meta.observations;
  auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  return *hi - *lo;
}

}  // namespace l0qp
