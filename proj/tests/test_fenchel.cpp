#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace l0qp;

namespace {

DualTriple random_triple(CounterRng& rng, double range = 5.0) {
  return {rng.uniform(-range, range), rng.uniform(-range, range), rng.uniform(-range, range),
          rng.uniform01() < 0.5 ? -1 : 1};
}

}  // namespace

TEST(Conjugate, ClosedFormCases) {
  EXPECT_EQ(f_star({0, 0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(f_star({2, -1, -2}), 4.0);
  EXPECT_DOUBLE_EQ(f_star({2, 2, 3}), 0.0);
  EXPECT_DOUBLE_EQ(f_star({2, 0, 5}), 1.0);
}

TEST(Conjugate, ClosedFormMatchesGridOracleOnCases) {
  const ConjugateGrid fine{10.0, 1e-3, 0.05};
  for (const DualTriple d : {DualTriple{2, -1, -2}, DualTriple{2, 2, 3}, DualTriple{2, 0, 5}}) {
    EXPECT_NEAR(f_star_bruteforce(d, fine), f_star(d), 1e-5);
  }
}

TEST(Conjugate, SignDoesNotMatter) {
  EXPECT_EQ(f_star({1.3, 0.2, -0.4, -1}), f_star({1.3, 0.2, -0.4, 1}));
}

TEST(Subgradient, TableCases) {
  auto eq = [](FStarSubgradient g, double a, double b1, double b2) {
    EXPECT_DOUBLE_EQ(g.alpha, a);
    EXPECT_DOUBLE_EQ(g.beta1, b1);
    EXPECT_DOUBLE_EQ(g.beta2, b2);
  };
  eq(f_star_subgradient({0, 1, 1}), 0, 0, 0);
  eq(f_star_subgradient({2, 0, 0}), 1, -1, 0);
  eq(f_star_subgradient({2, -1, -2}), 1, -1, -1);
  eq(f_star_subgradient({2, 3, 0.5}), 1, 0, -1);
}

TEST(ConjugateProperty, Convexity) {
  CounterRng rng(21);
  for (int k = 0; k < 10000; ++k) {
    const auto p = random_triple(rng);
    const auto q = random_triple(rng);
    const DualTriple mid{(p.alpha + q.alpha) / 2, (p.beta1 + q.beta1) / 2,
                         (p.beta2 + q.beta2) / 2};
    EXPECT_LE(f_star(mid), 0.5 * (f_star(p) + f_star(q)) + 1e-12);
  }
}

TEST(ConjugateProperty, SymmetricInTheBetas) {
  CounterRng rng(22);
  for (int k = 0; k < 1000; ++k) {
    const auto d = random_triple(rng);
    EXPECT_EQ(f_star(d), f_star({d.alpha, d.beta2, d.beta1}));
  }
}

TEST(ConjugateProperty, SubgradientInequality) {
  CounterRng rng(23);
  for (int k = 0; k < 1000; ++k) {
    const auto p = random_triple(rng);
    const auto q = random_triple(rng);
    const auto g = f_star_subgradient(q);
    const double lin = f_star(q) + g.alpha * (p.alpha - q.alpha) +
                       g.beta1 * (p.beta1 - q.beta1) + g.beta2 * (p.beta2 - q.beta2);
    EXPECT_GE(f_star(p), lin - 1e-9);
  }
}

TEST(ConjugateProperty, WeakDuality) {
  CounterRng rng(24);
  for (int k = 0; k < 10000; ++k) {
    const auto d = random_triple(rng);
    const double x1 = rng.uniform(-5, 5);
    const double x2 = rng.uniform(-5, 5);
    const double z1 = rng.uniform01();
    const double z2 = rng.uniform01();
    const double s = x1 + d.sign * x2;
    const double rhs = d.alpha * s - d.beta1 * z1 - d.beta2 * z2 - f_star(d);
    EXPECT_GE(perspective(x1, x2, z1, z2, d.sign), rhs - 1e-9);
  }
}

TEST(TightDuals, ZeroPoint) {
  const auto t = tight_duals(0, 0, 0, 0, -1);
  EXPECT_FALSE(t.asymptotic);
  EXPECT_EQ(t.duals.alpha, 0.0);
  EXPECT_EQ(t.duals.beta1, 0.0);
}

TEST(TightDuals, FullIndicatorMass) {
  const auto t = tight_duals(1, 0, 1, 0, -1);
  EXPECT_DOUBLE_EQ(t.duals.alpha, 2.0);
  EXPECT_DOUBLE_EQ(t.duals.beta1, 0.0);
  EXPECT_DOUBLE_EQ(t.duals.beta2, 0.0);
  EXPECT_DOUBLE_EQ(f_star(t.duals), 1.0);
  EXPECT_DOUBLE_EQ(2.0 * 1.0 - f_star(t.duals), perspective(1, 0, 1, 0, -1));
}

TEST(TightDuals, PartialIndicatorMassIsTight) {
  const auto t = tight_duals(1, 0, 0.25, 0.25, -1);
  EXPECT_FALSE(t.asymptotic);
  const double rhs = t.duals.alpha * 1.0 - 0.25 * t.duals.beta1 - 0.25 * t.duals.beta2 -
                     f_star(t.duals);
  EXPECT_NEAR(rhs, 2.0, 1e-12);
  EXPECT_NEAR(perspective(1, 0, 0.25, 0.25, -1), 2.0, 1e-15);
  // The grid oracle agrees that the affine minorant at these duals touches.
  EXPECT_NEAR(f_star_bruteforce(t.duals, {10.0, 1e-3, 0.05}), f_star(t.duals), 1e-5);
}

TEST(TightDuals, ZeroIndicatorsNeedUnboundedAlpha) {
  const auto t = tight_duals(1, 0.5, 0, 0, -1);
  EXPECT_TRUE(t.asymptotic);
  EXPECT_DOUBLE_EQ(t.duals.alpha, kAsymptoticScale * 0.5);
  const double rhs = t.duals.alpha * 0.5 - f_star(t.duals);
  EXPECT_GT(rhs, 0.0);
}

TEST(TightDualsProperty, EqualityAtRandomPoints) {
  CounterRng rng(25);
  for (int k = 0; k < 2000; ++k) {
    const int sign = rng.uniform01() < 0.5 ? -1 : 1;
    const double x1 = rng.uniform(-4, 4);
    const double x2 = rng.uniform(-4, 4);
    double z1 = rng.uniform01();
    double z2 = rng.uniform01();
    if (k % 3 == 0) z2 = std::max(0.0, 0.9 - z1) * rng.uniform01();
    const auto t = tight_duals(x1, x2, z1, z2, sign);
    ASSERT_FALSE(t.asymptotic);
    const double s = x1 + sign * x2;
    const double rhs = t.duals.alpha * s - t.duals.beta1 * z1 - t.duals.beta2 * z2 -
                       f_star(t.duals);
    const double lhs = perspective(x1, x2, z1, z2, sign);
    EXPECT_NEAR(lhs, rhs, 1e-9 * (1 + std::abs(lhs)));
  }
}

TEST(ConjugateOracle, GridStaysBelowClosedForm) {
  CounterRng rng(26);
  const ConjugateGrid coarse{10.0, 0.01, 0.05};
  for (int k = 0; k < 100; ++k) {
    const auto d = random_triple(rng);
    const double grid = f_star_bruteforce(d, coarse);
    EXPECT_LE(grid, f_star(d) + 1e-12);
    EXPECT_GE(grid, f_star(d) - 2 * coarse.s_step);
  }
}
