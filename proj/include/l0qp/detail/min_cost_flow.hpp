#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace l0qp::detail {

// Successive shortest paths with Dijkstra on reduced costs. Initial
// potentials come from Bellman-Ford, so negative arc costs are allowed as
// long as the network has no negative cycle.
class MinCostFlow {
 public:
  struct Arc {
    std::size_t to;
    std::size_t rev;
    long long cap;
    double cost;
  };

  explicit MinCostFlow(std::size_t nodes) : graph_(nodes) {}

  /// Returns a handle (node, index) usable with flow_on().
  std::pair<std::size_t, std::size_t> add_arc(std::size_t from, std::size_t to,
                                              long long cap, double cost) {
    graph_[from].push_back({to, graph_[to].size(), cap, cost});
    graph_[to].push_back({from, graph_[from].size() - 1, 0, -cost});
    return {from, graph_[from].size() - 1};
  }

  long long flow_on(std::pair<std::size_t, std::size_t> handle) const {
    const Arc& a = graph_[handle.first][handle.second];
    return graph_[a.to][a.rev].cap;
  }

  /// Pushes flow along cheapest augmenting paths while their cost is
  /// negative. Returns the total cost.
  double min_cost_any_flow(std::size_t source, std::size_t sink) {
    const std::size_t n = graph_.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> pot(n, kInf);
    pot[source] = 0.0;
    for (std::size_t round = 0; round + 1 < n; ++round) {
      bool changed = false;
      for (std::size_t u = 0; u < n; ++u) {
        if (pot[u] == kInf) continue;
        for (const auto& a : graph_[u]) {
          if (a.cap > 0 && pot[u] + a.cost < pot[a.to]) {
            pot[a.to] = pot[u] + a.cost;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    for (auto& p : pot) {
      if (p == kInf) p = 0.0;
    }

    double total = 0.0;
    std::vector<double> dist(n);
    std::vector<std::size_t> prev_node(n), prev_arc(n);
    using Item = std::pair<double, std::size_t>;
    for (;;) {
      dist.assign(n, kInf);
      dist[source] = 0.0;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      heap.emplace(0.0, source);
      while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (std::size_t k = 0; k < graph_[u].size(); ++k) {
          const Arc& a = graph_[u][k];
          if (a.cap <= 0) continue;
          // Clamp tiny negative reduced costs caused by rounding.
          const double reduced = std::max(0.0, a.cost + pot[u] - pot[a.to]);
          if (dist[u] + reduced < dist[a.to]) {
            dist[a.to] = dist[u] + reduced;
            prev_node[a.to] = u;
            prev_arc[a.to] = k;
            heap.emplace(dist[a.to], a.to);
          }
        }
      }
      if (dist[sink] == kInf) break;
      for (std::size_t u = 0; u < n; ++u) {
        if (dist[u] < kInf) pot[u] += dist[u];
      }
      const double path_cost = pot[sink] - pot[source];
      if (path_cost >= -1e-12) break;
      long long push = std::numeric_limits<long long>::max();
      for (std::size_t v = sink; v != source; v = prev_node[v]) {
        push = std::min(push, graph_[prev_node[v]][prev_arc[v]].cap);
      }
      for (std::size_t v = sink; v != source; v = prev_node[v]) {
        Arc& a = graph_[prev_node[v]][prev_arc[v]];
        a.cap -= push;
        graph_[v][a.rev].cap += push;
      }
      total += path_cost * static_cast<double>(push);
    }
    return total;
  }

 private:
  std::vector<std::vector<Arc>> graph_;
};

}  // namespace l0qp::detail
