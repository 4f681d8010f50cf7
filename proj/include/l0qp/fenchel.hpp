#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

// Conjugate of the rank-one perspective term
//
//   g(x, z) = (x_1 + sign * x_2)^2 / min{1, z_1 + z_2},   z in [0,1]^2,
//
// f*(alpha, beta_1, beta_2) = sup_{x,z} alpha s - beta_1 z_1 - beta_2 z_2 - g
// with s = x_1 + sign * x_2. The value and its subgradient in (alpha, beta)
// do not depend on the sign; only tight_duals() sees it through s.

namespace l0qp {

struct DualTriple {
  double alpha = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  int sign = -1;
};

struct FStarSubgradient {
  double alpha = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
};

inline double f_star(const DualTriple& d) {
  const double q = 0.25 * d.alpha * d.alpha;
  return std::max(0.0, q - std::min(d.beta1, d.beta2)) -
         std::min(std::max(d.beta1, d.beta2), 0.0);
}

inline FStarSubgradient f_star_subgradient(const DualTriple& d) {
  const double q = 0.25 * d.alpha * d.alpha;
  const double half = 0.5 * d.alpha;
  if (d.beta1 > q && d.beta2 > q) return {0.0, 0.0, 0.0};
  if (d.beta1 <= q && d.beta2 >= 0.0 && d.beta2 >= d.beta1) return {half, -1.0, 0.0};
  if (d.beta2 <= q && d.beta1 >= 0.0 && d.beta1 > d.beta2) return {half, 0.0, -1.0};
  // Remaining case: both betas negative.
  return {half, -1.0, -1.0};
}

/// Value of the perspective term; +infinity when z = 0 and s != 0.
inline double perspective(double x1, double x2, double z1, double z2, int sign) {
  const double s = x1 + sign * x2;
  const double denom = std::min(1.0, z1 + z2);
  if (denom <= 0.0) return s == 0.0 ? 0.0 : HUGE_VAL;
  return s * s / denom;
}

inline constexpr double kAsymptoticScale = 1e6;

struct TightDuals {
  DualTriple duals;
  bool asymptotic = false;  // exact tightness needs alpha -> infinity
};

/// Duals at which the Fenchel inequality holds with equality at (x, z).
/// When z = 0 and s != 0 no finite triple is tight; alpha = rho * s with
/// rho = kAsymptoticScale is returned and the result is flagged.
inline TightDuals tight_duals(double x1, double x2, double z1, double z2,
                              int sign) {
  const double s = x1 + sign * x2;
  const double total = z1 + z2;
  TightDuals out;
  out.duals.sign = sign;
  if (total <= 0.0) {
    if (s == 0.0) return out;
    out.asymptotic = true;
    out.duals.alpha = kAsymptoticScale * s;
    out.duals.beta1 = out.duals.beta2 = 0.25 * out.duals.alpha * out.duals.alpha;
    return out;
  }
  if (total < 1.0) {
    // Maximizer of alpha s - beta Z - f* sits on the boundary beta = alpha^2/4,
    // with alpha / 2 = s / Z.
    out.duals.alpha = 2.0 * s / total;
    out.duals.beta1 = out.duals.beta2 = s * s / (total * total);
    return out;
  }
  out.duals.alpha = 2.0 * s;
  return out;
}

struct ConjugateGrid {
  double s_half_range = 10.0;  // s = x_1 +- x_2 ranges over [-R, R]
  double s_step = 1e-2;
  double z_step = 0.05;        // must divide 1 so z = 0, 1 and z_1 + z_2 = 1 are hit
};

/// Grid maximization of the defining supremum. x enters only through
/// s = x_1 + sign * x_2, so the grid runs over s directly. Test oracle only.
inline double f_star_bruteforce(const DualTriple& d, const ConjugateGrid& grid = {}) {
  const auto ns = static_cast<long>(std::llround(2.0 * grid.s_half_range / grid.s_step));
  const auto nz = static_cast<long>(std::llround(1.0 / grid.z_step));
  double best = -HUGE_VAL;
  for (long iz1 = 0; iz1 <= nz; ++iz1) {
    const double z1 = static_cast<double>(iz1) / static_cast<double>(nz);
    for (long iz2 = 0; iz2 <= nz; ++iz2) {
      const double z2 = static_cast<double>(iz2) / static_cast<double>(nz);
      const double denom = std::min(1.0, z1 + z2);
      const double linear_z = -d.beta1 * z1 - d.beta2 * z2;
      if (denom <= 0.0) {
        best = std::max(best, linear_z);  // only s = 0 is finite
        continue;
      }
      for (long is = 0; is <= ns; ++is) {
        const double s = -grid.s_half_range + static_cast<double>(is) * grid.s_step;
        best = std::max(best, d.alpha * s + linear_z - s * s / denom);
      }
    }
  }
  return best;
}

}  // namespace l0qp
