#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "l0qp/error.hpp"
#include "l0qp/fenchel.hpp"
#include "l0qp/instance.hpp"
#include "l0qp/tridiag.hpp"

// Fenchel-dual decomposition for diagonally dominant instances.
//
// Under an ordering of the variables, pair terms between consecutive
// positions are kept (they form a tridiagonal matrix); every other term
// w (x_i + s x_j)^2 / 2 is replaced by its perspective and then by the affine
// minorant (w/2)(alpha (x_i + s x_j) - beta_1 z_i - beta_2 z_j - f*(alpha, beta)).
// For fixed duals the remainder separates into independent tridiagonal
// problems, one per segment, each solved exactly by the path algorithm.
// h(alpha, beta) is a lower bound on the optimum and is maximized by
// subgradient ascent.

namespace l0qp {

struct RelaxedTerm {
  std::size_t i = 0;  // original variable indices, i < j
  std::size_t j = 0;
  double weight = 0.0;
  int sign = -1;
};

struct Segment {
  std::size_t begin = 0;  // positions [begin, end)
  std::size_t end = 0;
};

struct Relaxation {
  std::size_t n = 0;
  std::vector<std::size_t> ordering;  // position k holds variable ordering[k]
  std::vector<std::size_t> position;  // inverse of ordering
  std::vector<PairTerm> retained;     // original indices
  std::vector<RelaxedTerm> relaxed;
  std::vector<Segment> segments;
  std::vector<TridiagProblem> templates;  // per segment; a, c are the base values
};

namespace detail {

inline std::string segment_label(const Relaxation& r, const Segment& s) {
  return "[" + std::to_string(r.ordering[s.begin] + 1) + " .. " +
         std::to_string(r.ordering[s.end - 1] + 1) + "] (positions " +
         std::to_string(s.begin + 1) + ".." + std::to_string(s.end) + ")";
}

}  // namespace detail

/// Splits the pair terms of `dd` into retained (the listed edges, which must
/// join consecutive positions under `ordering`) and relaxed, and builds one
/// tridiagonal template per maximal retained run.
inline Relaxation build_relaxation(const Instance& inst, const DDForm& dd,
                                   std::span<const std::size_t> ordering,
                                   std::span<const Edge> retained_edges) {
  if (!is_permutation_vector(ordering, inst.n)) {
    throw Error(ErrorKind::kInvalidPermutation,
                "ordering is not a bijection on the variables");
  }
  Relaxation r;
  r.n = inst.n;
  r.ordering.assign(ordering.begin(), ordering.end());
  r.position.resize(inst.n);
  for (std::size_t k = 0; k < inst.n; ++k) r.position[ordering[k]] = k;

  std::set<std::pair<std::size_t, std::size_t>> keep;
  for (const auto& e : retained_edges) {
    keep.emplace(std::min(e.u, e.v), std::max(e.u, e.v));
  }

  // link_weight[p], link_value[p]: retained term between positions p and p+1.
  std::vector<double> link_weight(inst.n, 0.0);
  std::vector<double> link_value(inst.n, 0.0);
  std::vector<char> linked(inst.n, 0);
  std::size_t matched = 0;
  for (const auto& t : dd.terms) {
    if (!keep.contains({t.i, t.j})) {
      r.relaxed.push_back({t.i, t.j, t.weight, t.sign});
      continue;
    }
    ++matched;
    const std::size_t pi = r.position[t.i];
    const std::size_t pj = r.position[t.j];
    const std::size_t lo = std::min(pi, pj);
    if (std::max(pi, pj) != lo + 1) {
      throw Error(ErrorKind::kInvalidArgument,
                  "retained term (" + std::to_string(t.i + 1) + ", " +
                      std::to_string(t.j + 1) +
                      ") does not join consecutive positions",
                  t.i);
    }
    r.retained.push_back(t);
    linked[lo] = 1;
    link_weight[lo] = t.weight;
    link_value[lo] = t.weight * t.sign;
  }
  if (matched != keep.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "a retained edge is not a term of the instance");
  }

  for (std::size_t p = 0; p < inst.n;) {
    Segment seg{p, p + 1};
    while (seg.end < inst.n && linked[seg.end - 1]) ++seg.end;
    TridiagProblem t;
    for (std::size_t q = seg.begin; q < seg.end; ++q) {
      const std::size_t v = r.ordering[q];
      t.a.push_back(inst.a[v]);
      t.c.push_back(inst.c[v]);
      double d = dd.diag_residual[v];
      if (q > seg.begin) d += link_weight[q - 1];
      if (q + 1 < seg.end) {
        d += link_weight[q];
        t.off.push_back(link_value[q]);
      }
      t.diag.push_back(d);
    }
    try {
      std::vector<double> zeros(t.size(), 0.0);
      thomas_solve(t.diag, t.off, zeros);
    } catch (const Error& e) {
      throw Error(ErrorKind::kSegmentNotPD,
                  "segment " + detail::segment_label(r, seg) +
                      " is not positive definite: " + e.what(),
                  r.ordering[seg.begin]);
    }
    r.segments.push_back(seg);
    r.templates.push_back(std::move(t));
    p = seg.end;
  }
  return r;
}

/// Duals of all relaxed terms, zero-initialized.
inline std::vector<DualTriple> zero_duals(const Relaxation& r) {
  std::vector<DualTriple> duals(r.relaxed.size());
  for (std::size_t t = 0; t < duals.size(); ++t) duals[t].sign = r.relaxed[t].sign;
  return duals;
}

/// psi coefficients (a', c') in position order.
struct PsiCoefficients {
  std::vector<double> a;
  std::vector<double> c;
};

inline PsiCoefficients assemble_psi(const Relaxation& r,
                                    std::span<const DualTriple> duals) {
  if (duals.size() != r.relaxed.size()) {
    throw Error(ErrorKind::kInvalidArgument, "one dual triple per relaxed term expected");
  }
  PsiCoefficients psi;
  psi.a.resize(r.n);
  psi.c.resize(r.n);
  for (std::size_t s = 0; s < r.segments.size(); ++s) {
    const auto& seg = r.segments[s];
    for (std::size_t q = seg.begin; q < seg.end; ++q) {
      psi.a[q] = r.templates[s].a[q - seg.begin];
      psi.c[q] = r.templates[s].c[q - seg.begin];
    }
  }
  for (std::size_t t = 0; t < duals.size(); ++t) {
    const auto& term = r.relaxed[t];
    const auto& d = duals[t];
    const double half_w = 0.5 * term.weight;
    const std::size_t pi = r.position[term.i];
    const std::size_t pj = r.position[term.j];
    psi.a[pi] -= half_w * d.beta1;
    psi.a[pj] -= half_w * d.beta2;
    psi.c[pi] += half_w * d.alpha;
    psi.c[pj] += half_w * term.sign * d.alpha;
  }
  return psi;
}

struct InnerSolution {
  double h = 0.0;
  std::vector<double> x;  // original variable order
  std::vector<int> z;
  std::vector<double> segment_values;
};

/// Dual function value and the inner minimizer. Segments are solved on up to
/// `threads` workers; the sum is taken in segment order.
inline InnerSolution h_eval(const Relaxation& r, std::span<const DualTriple> duals,
                            unsigned threads = 1) {
  const PsiCoefficients psi = assemble_psi(r, duals);
  const std::size_t count = r.segments.size();
  std::vector<SPSolution> parts(count);
  std::vector<std::optional<Error>> failures(count);

  auto work = [&](std::size_t s) {
    const auto& seg = r.segments[s];
    TridiagProblem p = r.templates[s];
    std::copy(psi.a.begin() + seg.begin, psi.a.begin() + seg.end, p.a.begin());
    std::copy(psi.c.begin() + seg.begin, psi.c.begin() + seg.end, p.c.begin());
    try {
      parts[s] = solve(p);
    } catch (const Error& e) {
      failures[s] = Error(ErrorKind::kSegmentNotPD,
                          "segment " + detail::segment_label(r, seg) + ": " + e.what(),
                          r.ordering[seg.begin]);
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1U, threads), count));
  if (workers <= 1) {
    for (std::size_t s = 0; s < count; ++s) work(s);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t s = w; s < count; s += workers) work(s);
      });
    }
  }
  for (auto& f : failures) {
    if (f) throw *f;
  }

  InnerSolution out;
  out.x.assign(r.n, 0.0);
  out.z.assign(r.n, 0);
  out.segment_values.resize(count);
  double total = 0.0;
  for (std::size_t s = 0; s < count; ++s) {
    const auto& seg = r.segments[s];
    out.segment_values[s] = parts[s].objective;
    total += parts[s].objective;
    for (std::size_t q = seg.begin; q < seg.end; ++q) {
      out.x[r.ordering[q]] = parts[s].x[q - seg.begin];
      out.z[r.ordering[q]] = parts[s].z[q - seg.begin];
    }
  }
  for (std::size_t t = 0; t < duals.size(); ++t) {
    total -= 0.5 * r.relaxed[t].weight * f_star(duals[t]);
  }
  out.h = total;
  return out;
}

/// Supergradient of h at `duals`, with the (w/2) factor of each term folded in.
inline std::vector<DualTriple> subgradient(const Relaxation& r,
                                           std::span<const DualTriple> duals,
                                           std::span<const double> xbar,
                                           std::span<const int> zbar) {
  std::vector<DualTriple> rho(duals.size());
  for (std::size_t t = 0; t < duals.size(); ++t) {
    const auto& term = r.relaxed[t];
    const auto xi = f_star_subgradient(duals[t]);
    const double half_w = 0.5 * term.weight;
    const double s = xbar[term.i] + term.sign * xbar[term.j];
    rho[t].alpha = half_w * (s - xi.alpha);
    rho[t].beta1 = half_w * (-xi.beta1 - zbar[term.i]);
    rho[t].beta2 = half_w * (-xi.beta2 - zbar[term.j]);
    rho[t].sign = term.sign;
  }
  return rho;
}

/// Objective at a feasible pair (x zero wherever z is zero), without offset.
inline double upper_bound(const Instance& inst, std::span<const double> x,
                          std::span<const int> z) {
  if (x.size() != inst.n || z.size() != inst.n) {
    throw Error(ErrorKind::kInvalidArgument, "x and z must have length n");
  }
  for (std::size_t i = 0; i < inst.n; ++i) {
    if (z[i] == 0 && x[i] != 0.0) {
      throw Error(ErrorKind::kInfeasiblePair,
                  "x_" + std::to_string(i + 1) + " is nonzero while z_" +
                      std::to_string(i + 1) + " = 0",
                  i);
    }
  }
  return objective(inst, x, z);
}

enum class StepSchedule { kGeometric, kHarmonic };

struct DecompConfig {
  StepSchedule schedule = StepSchedule::kGeometric;
  double ratio = 1.01;  // geometric: the k-th update has length ratio^-(k-1)
  double eps = 1e-4;
  std::size_t max_iter = 300;
  unsigned threads = 1;
  std::optional<double> big_m;
};

inline constexpr double kGapDenominatorGuard = 1e-8;

struct IterationRecord {
  std::size_t k = 0;
  double lower = 0.0;  // best h so far
  double upper = 0.0;  // best incumbent value so far
  double gap = 0.0;
  double step = 0.0;   // length of the update applied after this iteration
  double elapsed_ms = 0.0;
  double h = 0.0;      // h at this iteration's duals
  double value = 0.0;  // objective at this iteration's inner solution
};

enum class StopReason { kConverged, kStationary, kIterationLimit };

struct DecompResult {
  double lower = 0.0;
  double upper = 0.0;
  double gap = 0.0;
  std::vector<double> x;
  std::vector<int> z;
  std::vector<DualTriple> duals;  // final duals
  std::vector<IterationRecord> log;
  StopReason reason = StopReason::kIterationLimit;
  std::size_t big_m_violations = 0;
};

inline double relative_gap(double lower, double upper) {
  return (upper - lower) / std::max(std::abs(upper), kGapDenominatorGuard);
}

inline double step_length(const DecompConfig& cfg, std::size_t k) {
  if (cfg.schedule == StepSchedule::kHarmonic) return 1.0 / static_cast<double>(k);
  return std::pow(cfg.ratio, -static_cast<double>(k - 1));
}

/// Subgradient ascent on h from zero duals. The geometric schedule takes
/// normalized steps, the harmonic schedule unnormalized ones.
inline DecompResult run(const Instance& inst, const Relaxation& r,
                        const DecompConfig& cfg = {}) {
  if (!(cfg.eps > 0.0)) throw Error(ErrorKind::kInvalidArgument, "eps must be > 0");
  if (cfg.max_iter < 1) throw Error(ErrorKind::kInvalidArgument, "max_iter must be >= 1");
  if (cfg.schedule == StepSchedule::kGeometric && !(cfg.ratio > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "step ratio must be > 0");
  }
  const auto start = std::chrono::steady_clock::now();
  DecompResult res;
  res.duals = zero_duals(r);
  res.lower = -HUGE_VAL;
  res.upper = HUGE_VAL;

  for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
    InnerSolution inner = h_eval(r, res.duals, cfg.threads);
    const double value = upper_bound(inst, inner.x, inner.z);
    if (cfg.big_m) {
      for (double xi : inner.x) {
        if (std::abs(xi) > *cfg.big_m) ++res.big_m_violations;
      }
    }
    res.lower = std::max(res.lower, inner.h);
    if (value < res.upper) {
      res.upper = value;
      res.x = inner.x;
      res.z = inner.z;
    }
    res.gap = relative_gap(res.lower, res.upper);

    IterationRecord rec;
    rec.k = k;
    rec.lower = res.lower;
    rec.upper = res.upper;
    rec.gap = res.gap;
    rec.h = inner.h;
    rec.value = value;

    auto finish = [&](StopReason why) {
      rec.elapsed_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
      res.log.push_back(rec);
      res.reason = why;
    };

    if (res.gap <= cfg.eps) {
      finish(StopReason::kConverged);
      return res;
    }
    auto rho = subgradient(r, res.duals, inner.x, inner.z);
    double norm2 = 0.0;
    for (const auto& g : rho) {
      norm2 += g.alpha * g.alpha + g.beta1 * g.beta1 + g.beta2 * g.beta2;
    }
    if (norm2 == 0.0) {
      finish(StopReason::kStationary);
      return res;
    }
    const double step = step_length(cfg, k);
    const double scale =
        cfg.schedule == StepSchedule::kGeometric ? step / std::sqrt(norm2) : step;
    for (std::size_t t = 0; t < rho.size(); ++t) {
      res.duals[t].alpha += scale * rho[t].alpha;
      res.duals[t].beta1 += scale * rho[t].beta1;
      res.duals[t].beta2 += scale * rho[t].beta2;
    }
    rec.step = step;
    finish(StopReason::kIterationLimit);
  }
  return res;
}

}  // namespace l0qp
