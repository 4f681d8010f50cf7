#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "l0qp/l0qp.hpp"

namespace fixtures {

// Star on node 2 with a path 1-2-3 and a pendant edge (2,4).
inline l0qp::Instance star4() {
  l0qp::Instance inst;
  inst.n = 4;
  inst.a = {2, 2, 2, 2};
  inst.c = {-1.3, -2.5, 4.6, -7.8};
  inst.q = {{0, 0, 3.0}, {0, 1, -1.5}, {1, 1, 6.0}, {1, 2, -1.0},
            {1, 3, -0.8}, {2, 2, 3.0}, {3, 3, 2.0}};
  return inst;
}

// star4 with the (2,4) term dropped and its weight removed from both
// diagonals, as a path problem.
inline l0qp::TridiagProblem star4_path_part() {
  l0qp::TridiagProblem p;
  p.a = {2, 2, 2, 2};
  p.c = {-1.3, -2.5, 4.6, -7.8};
  p.diag = {3.0, 5.2, 3.0, 1.2};
  p.off = {-1.5, -1.0, 0.0};
  return p;
}

inline l0qp::TridiagProblem random_tridiag(std::size_t m, std::uint64_t seed) {
  return l0qp::to_tridiag(l0qp::gen_tridiagonal(m, seed));
}

// Gaussian elimination with partial pivoting on a dense copy; independent of
// the library's Thomas and Cholesky routines.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(a[r][k]) > std::abs(a[piv][k])) piv = r;
    }
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a[r][k] / a[k][k];
      for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
      b[r] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double v = b[k];
    for (std::size_t c = k + 1; c < n; ++c) v -= a[k][c] * x[c];
    x[k] = v / a[k][k];
  }
  return x;
}

// Arc weight from its definition: sum of a plus min over x of c'x + x'Qx/2 on
// the variables strictly between DAG nodes i and j.
inline double arc_weight_dense(const l0qp::TridiagProblem& p, std::size_t i,
                               std::size_t j) {
  if (j <= i + 1) return 0.0;
  const std::size_t first = i;
  const std::size_t len = j - i - 1;
  std::vector<std::vector<double>> q(len, std::vector<double>(len, 0.0));
  std::vector<double> rhs(len);
  double total = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    q[k][k] = p.diag[first + k];
    if (k + 1 < len) q[k][k + 1] = q[k + 1][k] = p.off[first + k];
    rhs[k] = -p.c[first + k];
    total += p.a[first + k];
  }
  const auto x = dense_solve(q, rhs);
  for (std::size_t k = 0; k < len; ++k) total += 0.5 * p.c[first + k] * x[k];
  return total;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// Random graph with exactly `edges` edges (or fewer if the graph is full) on
// n nodes; bipartite when `bipartite` is set, with the first half on the left.
inline l0qp::SupportGraph random_graph(std::size_t n, std::size_t edges, bool bipartite,
                                       std::uint64_t seed) {
  l0qp::CounterRng rng(seed);
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  const std::size_t left = n / 2;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (bipartite && ((u < left) == (v < left))) continue;
      candidates.emplace_back(u, v);
    }
  }
  for (std::size_t k = candidates.size(); k > 1; --k) {
    const auto r = static_cast<std::size_t>(rng.uniform_int(0, std::int64_t(k - 1)));
    std::swap(candidates[k - 1], candidates[r]);
  }
  l0qp::SupportGraph g;
  g.n = n;
  for (std::size_t k = 0; k < std::min(edges, candidates.size()); ++k) {
    g.edges.push_back({candidates[k].first, candidates[k].second, rng.uniform(0.1, 2.0)});
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const auto& l, const auto& r) {
    return std::pair(l.u, l.v) < std::pair(r.u, r.v);
  });
  return g;
}

inline double cover_weight(const l0qp::Ordering& ord) {
  double w = 0.0;
  for (const auto& e : ord.retained) w += e.weight;
  return w;
}

// Pipeline on an instance: validate, cover, relax.
inline l0qp::Relaxation relax_auto(const l0qp::Instance& inst,
                                   l0qp::CoverMethod method = l0qp::CoverMethod::kAuto) {
  const auto dd = l0qp::validate(inst);
  const auto ord = l0qp::choose_ordering(l0qp::support_graph(inst), method);
  return l0qp::build_relaxation(inst, dd, ord.pi, ord.retained);
}

}  // namespace fixtures
