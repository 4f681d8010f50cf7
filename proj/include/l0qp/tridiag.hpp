#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "l0qp/error.hpp"
#include "l0qp/instance.hpp"

// Exact solver for
//
//   min  a'z + c'x + (1/2) sum_i Q_ii x_i^2 + sum_i Q_{i,i+1} x_i x_{i+1}
//   s.t. x_i (1 - z_i) = 0,  z binary,
//
// with Q tridiagonal and positive definite, as a shortest path on the DAG with
// nodes 0..m+1. Arc (i, j) means "z is zero at i and j and one strictly in
// between"; its length w_ij is the optimal value of the unconstrained block
// problem on variables i+1..j-1 plus their penalties. The block values along a
// row i are produced incrementally by forward elimination, so the whole DAG is
// scanned in O(m^2) time and O(m) memory.

namespace l0qp {

inline constexpr double kPivotTolerance = 1e-12;

/// Path-structured problem; variables are 0-based here while DAG nodes run
/// 0..m+1 (node k > 0 stands for variable k-1).
struct TridiagProblem {
  std::vector<double> a;
  std::vector<double> c;
  std::vector<double> diag;  // Q_ii
  std::vector<double> off;   // Q_{i,i+1}, length m-1

  std::size_t size() const { return a.size(); }
};

struct SPSolution {
  double objective = 0.0;
  std::vector<int> z;
  std::vector<double> x;
  std::vector<std::size_t> visited;  // interior path nodes (1-based) = zeros of z
  std::vector<double> labels;        // shortest (0,k)-path lengths, k = 0..m+1
};

inline void check_problem(const TridiagProblem& p) {
  const std::size_t m = p.size();
  if (p.c.size() != m || p.diag.size() != m ||
      p.off.size() != (m == 0 ? 0 : m - 1)) {
    throw Error(ErrorKind::kInvalidArgument,
                "tridiagonal problem with inconsistent vector lengths");
  }
}

/// Streams (j, w_ij) for j = i+2 .. m+1 using the O(1) elimination update.
/// w_{i,i+1} = 0 by convention and is not produced.
class ArcWeightRow {
 public:
  ArcWeightRow(const TridiagProblem& p, std::size_t i) : p_(&p), i_(i), j_(i + 2) {}

  bool done() const { return j_ > p_->size() + 1; }

  std::pair<std::size_t, double> next() {
    // Variable entering the block is k = j-2 (0-based).
    const std::size_t k = j_ - 2;
    if (j_ == i_ + 2) {
      c_bar_ = p_->c[k];
      q_bar_ = p_->diag[k];
    } else {
      const double coupling = p_->off[k - 1];
      c_bar_ = p_->c[k] - coupling * c_bar_ / q_bar_;
      q_bar_ = p_->diag[k] - coupling * coupling / q_bar_;
    }
    if (!(q_bar_ > kPivotTolerance)) {
      throw Error(ErrorKind::kNotPositiveDefinite,
                  "pivot " + std::to_string(q_bar_) + " at variable " +
                      std::to_string(k + 1) + " (block starting at " +
                      std::to_string(i_ + 1) + ")",
                  k);
    }
    w_bar_ += p_->a[k] - 0.5 * c_bar_ * c_bar_ / q_bar_;
    return {j_++, w_bar_};
  }

 private:
  const TridiagProblem* p_;
  std::size_t i_;
  std::size_t j_;
  double c_bar_ = 0.0;
  double q_bar_ = 0.0;
  double w_bar_ = 0.0;
};

inline std::vector<std::pair<std::size_t, double>> arc_weight_row(
    const TridiagProblem& p, std::size_t i) {
  check_problem(p);
  if (i >= p.size() && p.size() > 0) {
    throw Error(ErrorKind::kInvalidArgument, "row index out of range");
  }
  std::vector<std::pair<std::size_t, double>> row;
  for (ArcWeightRow it(p, i); !it.done();) row.push_back(it.next());
  return row;
}

/// Thomas algorithm for a symmetric tridiagonal system. Throws on a
/// non-positive pivot.
inline std::vector<double> thomas_solve(std::span<const double> diag,
                                        std::span<const double> off,
                                        std::span<const double> rhs) {
  const std::size_t m = diag.size();
  std::vector<double> pivot(m), y(m), x(m);
  for (std::size_t k = 0; k < m; ++k) {
    pivot[k] = diag[k];
    y[k] = rhs[k];
    if (k > 0) {
      const double l = off[k - 1] / pivot[k - 1];
      pivot[k] -= l * off[k - 1];
      y[k] -= l * y[k - 1];
    }
    if (!(pivot[k] > kPivotTolerance)) {
      throw Error(ErrorKind::kNotPositiveDefinite,
                  "pivot " + std::to_string(pivot[k]) + " in tridiagonal solve",
                  k);
    }
  }
  for (std::size_t k = m; k-- > 0;) {
    x[k] = y[k];
    if (k + 1 < m) x[k] -= off[k] * x[k + 1];
    x[k] /= pivot[k];
  }
  return x;
}

namespace detail {

// Solves Q[u,v] x = -c[u,v] on the variables strictly between DAG nodes u and
// v and writes them into x. Returns sum a + (1/2) c'x, i.e. w_uv.
inline double solve_block(const TridiagProblem& p, std::size_t u, std::size_t v,
                          std::vector<double>& x) {
  if (v <= u + 1) return 0.0;
  const std::size_t first = u;      // variable index of node u+1
  const std::size_t len = v - u - 1;
  std::span<const double> diag(p.diag.data() + first, len);
  std::span<const double> off(p.off.data() + first, len - 1);
  std::vector<double> rhs(len);
  for (std::size_t k = 0; k < len; ++k) rhs[k] = -p.c[first + k];
  auto block = thomas_solve(diag, off, rhs);
  double value = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    x[first + k] = block[k];
    value += p.a[first + k] + 0.5 * p.c[first + k] * block[k];
  }
  return value;
}

}  // namespace detail

/// Global optimum of the path-structured problem.
inline SPSolution solve(const TridiagProblem& p) {
  check_problem(p);
  const std::size_t m = p.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> label(m + 2, kInf);
  std::vector<std::size_t> pred(m + 2, 0);
  label[0] = 0.0;
  for (std::size_t i = 0; i <= m; ++i) {
    if (label[i] < label[i + 1]) {
      label[i + 1] = label[i];
      pred[i + 1] = i;
    }
    for (ArcWeightRow row(p, i); !row.done();) {
      const auto [j, w] = row.next();
      const double candidate = label[i] + w;
      // Strict comparison keeps the smallest predecessor on ties.
      if (candidate < label[j]) {
        label[j] = candidate;
        pred[j] = i;
      }
    }
  }

  SPSolution sol;
  sol.objective = label[m + 1];
  sol.z.assign(m, 1);
  sol.x.assign(m, 0.0);
  std::vector<std::size_t> path{m + 1};
  for (std::size_t v = m + 1; v != 0;) {
    v = pred[v];
    path.push_back(v);
  }
  for (std::size_t k = path.size(); k-- > 1;) {
    const std::size_t u = path[k];
    const std::size_t v = path[k - 1];
    if (u != 0) {
      sol.z[u - 1] = 0;
      sol.visited.push_back(u);
    }
    detail::solve_block(p, u, v, sol.x);
  }
  sol.labels = std::move(label);
  return sol;
}

/// Optimal x for a fixed indicator vector, and the objective value there.
inline std::pair<std::vector<double>, double> solve_fixed_z(
    const TridiagProblem& p, std::span<const int> zbar) {
  check_problem(p);
  const std::size_t m = p.size();
  if (zbar.size() != m) {
    throw Error(ErrorKind::kInvalidArgument, "indicator vector has wrong length");
  }
  std::vector<double> x(m, 0.0);
  double value = 0.0;
  std::size_t u = 0;
  for (std::size_t v = 1; v <= m + 1; ++v) {
    if (v == m + 1 || zbar[v - 1] == 0) {
      value += detail::solve_block(p, u, v, x);
      u = v;
    }
  }
  return {std::move(x), value};
}

/// a'z + c'x + (1/2) sum Q_ii x_i^2 + sum Q_{i,i+1} x_i x_{i+1}.
inline double objective(const TridiagProblem& p, std::span<const double> x,
                        std::span<const int> z) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    total += p.a[i] * z[i] + p.c[i] * x[i] + 0.5 * p.diag[i] * x[i] * x[i];
    if (i + 1 < p.size()) total += p.off[i] * x[i] * x[i + 1];
  }
  return total;
}

/// The same problem as a general instance (zero off-diagonals omitted).
inline Instance to_instance(const TridiagProblem& p) {
  check_problem(p);
  Instance inst;
  inst.n = p.size();
  inst.a = p.a;
  inst.c = p.c;
  for (std::size_t i = 0; i < p.size(); ++i) {
    inst.q.push_back({i, i, p.diag[i]});
    if (i + 1 < p.size() && p.off[i] != 0.0) inst.q.push_back({i, i + 1, p.off[i]});
  }
  return inst;
}

/// Reads an instance whose Q is tridiagonal in its given variable order.
inline TridiagProblem to_tridiag(const Instance& inst) {
  check_structure(inst);
  TridiagProblem p;
  p.a = inst.a;
  p.c = inst.c;
  p.diag.assign(inst.n, 0.0);
  p.off.assign(inst.n - 1, 0.0);
  for (const auto& e : inst.q) {
    if (e.row == e.col) {
      p.diag[e.row] = e.value;
    } else if (e.col == e.row + 1) {
      p.off[e.row] = e.value;
    } else {
      throw Error(ErrorKind::kInvalidArgument,
                  "Q is not tridiagonal: entry (" + std::to_string(e.row + 1) +
                      ", " + std::to_string(e.col + 1) + ")",
                  e.row);
    }
  }
  return p;
}

}  // namespace l0qp
