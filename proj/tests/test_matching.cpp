#include <gtest/gtest.h>

#include <functional>

#include "fixtures.hpp"

using l0qp::CounterRng;
using l0qp::detail::BlossomMatcher;

namespace {

long long brute_force_matching(int n, const std::vector<BlossomMatcher::WeightedEdge>& edges) {
  long long best = 0;
  std::vector<char> used(n, 0);
  std::function<void(std::size_t, long long)> rec = [&](std::size_t k, long long acc) {
    if (k == edges.size()) {
      best = std::max(best, acc);
      return;
    }
    rec(k + 1, acc);
    const auto& e = edges[k];
    if (!used[e.u] && !used[e.v]) {
      used[e.u] = used[e.v] = 1;
      rec(k + 1, acc + e.w);
      used[e.u] = used[e.v] = 0;
    }
  };
  rec(0, 0);
  return best;
}

long long matching_weight(const std::vector<int>& mate,
                          const std::vector<BlossomMatcher::WeightedEdge>& edges) {
  long long total = 0;
  for (const auto& e : edges) {
    if (mate[e.u] == e.v) {
      EXPECT_EQ(mate[e.v], e.u);
      total += e.w;
    }
  }
  return total;
}

}  // namespace

TEST(Blossom, OddCycleNeedsABlossom) {
  // Triangle plus pendant: the best matching pairs the pendant with the
  // triangle and uses one more triangle edge.
  const std::vector<BlossomMatcher::WeightedEdge> edges{
      {0, 1, 6}, {1, 2, 6}, {0, 2, 6}, {2, 3, 5}};
  const auto mate = BlossomMatcher::solve(4, edges);
  EXPECT_EQ(matching_weight(mate, edges), 11);
}

TEST(Blossom, NestedBlossoms) {
  const std::vector<BlossomMatcher::WeightedEdge> edges{
      {0, 1, 8}, {0, 2, 9}, {1, 2, 10}, {2, 3, 7}, {0, 5, 5}, {3, 4, 6}};
  EXPECT_EQ(matching_weight(BlossomMatcher::solve(6, edges), edges),
            brute_force_matching(6, edges));
}

TEST(BlossomProperty, OptimalOnRandomGraphs) {
  CounterRng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(0, 8));
    std::vector<BlossomMatcher::WeightedEdge> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.uniform01() < 0.5) edges.push_back({u, v, rng.uniform_int(1, 20)});
      }
    }
    if (edges.size() > 18) edges.resize(18);
    const auto mate = BlossomMatcher::solve(n, edges);
    EXPECT_EQ(matching_weight(mate, edges), brute_force_matching(n, edges)) << "trial " << trial;
  }
}

TEST(Assignment, MaximumWeightBipartiteMatching) {
  const std::vector<std::vector<double>> w{{0, 5, 1}, {5, 0, 4}, {1, 4, 0}};
  const auto partner = l0qp::detail::max_weight_bipartite_matching(w);
  double total = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (partner[i] != static_cast<std::size_t>(-1)) total += w[i][partner[i]];
  }
  EXPECT_DOUBLE_EQ(total, 10.0);
}

TEST(MinCostFlow, StopsWhenPathsStopPaying) {
  l0qp::detail::MinCostFlow flow(4);
  flow.add_arc(0, 1, 1, -3.0);
  flow.add_arc(1, 3, 1, 0.0);
  flow.add_arc(0, 2, 1, 2.0);
  flow.add_arc(2, 3, 1, 0.0);
  EXPECT_DOUBLE_EQ(flow.min_cost_any_flow(0, 3), -3.0);
}
