#include <gtest/gtest.h>

#include <limits>

#include "fixtures.hpp"

using namespace l0qp;

TEST(PathSolve, StarPathPart) {
  const auto sol = solve(fixtures::star4_path_part());
  EXPECT_NEAR(sol.objective, -24.88, 0.01);
  const std::vector<double> expected{0, 0, -1.53, 6.50};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(sol.x[i], expected[i], 0.01);
  EXPECT_EQ(sol.z, (std::vector<int>{0, 0, 1, 1}));
  EXPECT_EQ(sol.visited, (std::vector<std::size_t>{1, 2}));
}

TEST(PathSolve, SingleVariableTakesTheNegativeArc) {
  TridiagProblem p{{1}, {-4}, {2}, {}};
  const auto sol = solve(p);
  EXPECT_DOUBLE_EQ(sol.objective, -3.0);
  EXPECT_EQ(sol.z, std::vector<int>{1});
  EXPECT_DOUBLE_EQ(sol.x[0], 2.0);
}

TEST(PathSolve, SingleVariableStaysAtZero) {
  TridiagProblem p{{1}, {-1}, {2}, {}};
  const auto sol = solve(p);
  EXPECT_DOUBLE_EQ(sol.objective, 0.0);
  EXPECT_EQ(sol.z, std::vector<int>{0});
  EXPECT_DOUBLE_EQ(sol.x[0], 0.0);
}

TEST(PathSolve, RejectsIndefiniteMatrix) {
  TridiagProblem p{{0, 0}, {-1, -1}, {1, 1}, {2}};
  try {
    solve(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotPositiveDefinite);
    EXPECT_TRUE(is_numerical(e.kind()));
  }
}

TEST(PathSolve, RejectsInconsistentLengths) {
  TridiagProblem p{{0, 0}, {-1}, {1, 1}, {0.5}};
  EXPECT_THROW(solve(p), Error);
}

TEST(PathSolve, NegativePenaltiesSelectEverything) {
  TridiagProblem p{{-1, -1, -1}, {0, 0, 0}, {2, 2, 2}, {0.5, 0.5}};
  const auto sol = solve(p);
  EXPECT_DOUBLE_EQ(sol.objective, -3.0);
  EXPECT_EQ(sol.z, (std::vector<int>{1, 1, 1}));
}

TEST(PathSolve, TiesGoToTheSmallerPredecessor) {
  // a - c^2/(2Q) = 0 makes selecting the variable exactly as good as not.
  // The end node is reached from node 0 (variable selected) before node 1.
  TridiagProblem p{{1}, {-2}, {2}, {}};
  const auto sol = solve(p);
  EXPECT_EQ(sol.objective, 0.0);
  EXPECT_EQ(sol.z, std::vector<int>{1});
}

TEST(FixedSupport, AllZeros) {
  const auto p = fixtures::random_tridiag(6, 3);
  const std::vector<int> z(6, 0);
  const auto [x, value] = solve_fixed_z(p, z);
  EXPECT_EQ(value, 0.0);
  for (double v : x) EXPECT_EQ(v, 0.0);
}

TEST(FixedSupport, TwoByTwoBlock) {
  TridiagProblem p{{0, 0}, {-1, -1}, {2, 2}, {1}};
  const std::vector<int> z{1, 1};
  const auto [x, value] = solve_fixed_z(p, z);
  EXPECT_NEAR(x[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(x[1], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(value, -1.0 / 3.0, 1e-15);
}

TEST(FixedSupport, StarPathPartOptimalSupport) {
  const std::vector<int> z{0, 0, 1, 1};
  const auto [x, value] = solve_fixed_z(fixtures::star4_path_part(), z);
  EXPECT_NEAR(value, -24.88, 0.01);
}

TEST(FixedSupportProperty, ValueMatchesDirectEvaluation) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const std::size_t m = 1 + seed % 12;
    const auto p = fixtures::random_tridiag(m, seed);
    CounterRng rng(seed + 500);
    std::vector<int> z(m);
    for (auto& v : z) v = rng.uniform01() < 0.6 ? 1 : 0;
    const auto [x, value] = solve_fixed_z(p, z);
    for (std::size_t i = 0; i < m; ++i) {
      if (z[i] == 0) {
        EXPECT_EQ(x[i], 0.0);
      }
    }
    EXPECT_LE(fixtures::rel_diff(value, objective(p, x, z)), 1e-9);
  }
}

TEST(ArcWeights, SingleVariableRow) {
  TridiagProblem p{{1}, {-4}, {2}, {}};
  const auto row = arc_weight_row(p, 0);
  ASSERT_EQ(row.size(), 1u);
  EXPECT_EQ(row[0].first, 2u);
  EXPECT_DOUBLE_EQ(row[0].second, -3.0);
}

TEST(ArcWeights, MatchDenseDefinition) {
  const auto p = fixtures::random_tridiag(8, 11);
  for (std::size_t i = 0; i < 8; ++i) {
    for (const auto& [j, w] : arc_weight_row(p, i)) {
      EXPECT_LE(fixtures::rel_diff(w, fixtures::arc_weight_dense(p, i, j)), 1e-8)
          << "arc (" << i << ", " << j << ")";
    }
  }
}

TEST(ArcWeights, ZeroCouplingSplitsCleanly) {
  const auto p = fixtures::star4_path_part();
  const auto row = arc_weight_row(p, 2);
  ASSERT_EQ(row.size(), 2u);
  const double w3 = p.a[2] - p.c[2] * p.c[2] / (2 * p.diag[2]);
  const double w4 = p.a[3] - p.c[3] * p.c[3] / (2 * p.diag[3]);
  EXPECT_NEAR(row[1].second, w3 + w4, 1e-12);
}

TEST(PathSolveProperty, LabelsAreShortestPathLengths) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::size_t m = 5 * seed;
    const auto p = fixtures::random_tridiag(m, seed);
    const auto sol = solve(p);
    std::vector<double> dist(m + 2, std::numeric_limits<double>::infinity());
    dist[0] = 0.0;
    for (std::size_t j = 1; j <= m + 1; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        dist[j] = std::min(dist[j], dist[i] + fixtures::arc_weight_dense(p, i, j));
      }
    }
    for (std::size_t k = 0; k <= m + 1; ++k) {
      EXPECT_LE(fixtures::rel_diff(sol.labels[k], dist[k]), 1e-9) << "node " << k;
    }
  }
}

TEST(PathSolveProperty, BlocksAreStationary) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t m = 30;
    const auto p = fixtures::random_tridiag(m, seed);
    const auto sol = solve(p);
    double cnorm = 0.0;
    for (double c : p.c) cnorm += c * c;
    cnorm = std::sqrt(cnorm);
    for (std::size_t i = 0; i < m; ++i) {
      if (sol.z[i] == 0) {
        EXPECT_EQ(sol.x[i], 0.0);
        continue;
      }
      double r = p.c[i] + p.diag[i] * sol.x[i];
      if (i > 0 && sol.z[i - 1]) r += p.off[i - 1] * sol.x[i - 1];
      if (i + 1 < m && sol.z[i + 1]) r += p.off[i] * sol.x[i + 1];
      EXPECT_LE(std::abs(r), 1e-8 * cnorm);
    }
    EXPECT_LE(fixtures::rel_diff(sol.objective, objective(p, sol.x, sol.z)), 1e-9);
  }
}

TEST(PathSolveProperty, MatchesEnumeration) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const std::size_t m = 1 + seed % 12;
    const auto p = fixtures::random_tridiag(m, seed);
    const auto sol = solve(p);
    const auto ref = enumerate(to_instance(p));
    EXPECT_LE(fixtures::rel_diff(sol.objective, ref.value), 1e-8) << "seed " << seed;
  }
}

TEST(Conversion, InstanceRoundTrip) {
  const auto p = fixtures::random_tridiag(9, 2);
  const auto back = to_tridiag(to_instance(p));
  EXPECT_EQ(back.a, p.a);
  EXPECT_EQ(back.c, p.c);
  EXPECT_EQ(back.diag, p.diag);
  EXPECT_EQ(back.off, p.off);
}

TEST(Conversion, RejectsNonTridiagonal) {
  EXPECT_THROW(to_tridiag(fixtures::star4()), Error);
}
