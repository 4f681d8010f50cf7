#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace l0qp;

TEST(FixedSupportQP, EmptySupport) {
  const std::vector<int> z(4, 0);
  const auto [x, value] = fixed_z_qp(fixtures::star4(), z);
  EXPECT_EQ(value, 0.0);
  for (double v : x) EXPECT_EQ(v, 0.0);
}

TEST(FixedSupportQP, DecoupledPairOfStar) {
  // Variables 3 and 4 share no entry, so each is a scalar solve.
  const std::vector<int> z{0, 0, 1, 1};
  const auto inst = fixtures::star4();
  const auto [x, value] = fixed_z_qp(inst, z);
  EXPECT_NEAR(x[2], -4.6 / 3.0, 1e-14);
  EXPECT_NEAR(x[3], 7.8 / 2.0, 1e-14);
  EXPECT_NEAR(value, 4.0 - 4.6 * 4.6 / 6.0 - 7.8 * 7.8 / 4.0, 1e-12);
  EXPECT_NEAR(value, upper_bound(inst, x, z), 1e-12);
}

TEST(FixedSupportQP, SingularSupportIsReported) {
  Instance inst;
  inst.n = 2;
  inst.a = {0, 0};
  inst.c = {1, 1};
  inst.q = {{0, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  const std::vector<int> z{1, 1};
  try {
    fixed_z_qp(inst, z);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSingularSupport);
  }
  const auto res = enumerate(inst);
  EXPECT_EQ(res.singular_supports, 1u);
  EXPECT_EQ(res.supports_enumerated, 4u);
}

TEST(Enumerate, StarOptimum) {
  const auto res = enumerate(fixtures::star4());
  EXPECT_NEAR(res.value, -14.74, 0.01);
  EXPECT_EQ(res.z, (std::vector<int>{0, 0, 1, 1}));
  EXPECT_NEAR(res.x[2], -1.53, 0.01);
  EXPECT_NEAR(res.x[3], 3.9, 0.01);
  EXPECT_EQ(res.supports_enumerated, 16u);
}

TEST(Enumerate, SingleVariable) {
  Instance inst;
  inst.n = 1;
  inst.a = {1};
  inst.c = {-4};
  inst.q = {{0, 0, 2}};
  EXPECT_DOUBLE_EQ(enumerate(inst).value, -3.0);
}

TEST(Enumerate, TiesGoToTheSmallestIndicatorVector) {
  Instance inst;
  inst.n = 2;
  inst.a = {1, 1};
  inst.c = {-2, -2};
  inst.q = {{0, 0, 2}, {1, 1, 2}};
  // Each variable alone is worth exactly 0, like the empty support.
  const auto res = enumerate(inst);
  EXPECT_EQ(res.z, (std::vector<int>{0, 0}));
}

TEST(Enumerate, RefusesLargeInstances) {
  try {
    enumerate(gen_tridiagonal(21, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTooLarge);
  }
}

TEST(EnumerateProperty, AgreesWithDenseFixedSupportSolves) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto inst = gen_random_dd(6, 0.5, seed);
    const auto res = enumerate(inst);
    EXPECT_LE(fixtures::rel_diff(res.value, objective(inst, res.x, res.z)), 1e-10);
    // No single flip of the optimal support improves on it.
    for (std::size_t i = 0; i < inst.n; ++i) {
      auto z = res.z;
      z[i] = 1 - z[i];
      EXPECT_GE(fixed_z_qp(inst, z).second, res.value - 1e-12);
    }
  }
}
