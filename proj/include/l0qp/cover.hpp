#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "l0qp/detail/assignment.hpp"
#include "l0qp/detail/blossom.hpp"
#include "l0qp/detail/min_cost_flow.hpp"
#include "l0qp/error.hpp"
#include "l0qp/instance.hpp"

// Choosing which pair terms to keep. The kept edges must form vertex-disjoint
// paths; their weight is what the decomposition gets to treat exactly.

namespace l0qp {

enum class ComponentKind { kPath, kCycle };

struct CoverComponent {
  ComponentKind kind = ComponentKind::kPath;
  std::vector<std::size_t> nodes;
  // weights[t] joins nodes[t] and nodes[t+1]; for a cycle the last entry
  // closes it back to nodes[0].
  std::vector<double> weights;

  double weight() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }
};

struct CoverSolution {
  std::size_t n = 0;
  std::vector<Edge> edges;  // a 2-cycle lists its edge twice
  std::vector<CoverComponent> components;
  double weight = 0.0;
};

struct Ordering {
  std::vector<std::size_t> pi;  // position k holds node pi[k]
  std::vector<Edge> retained;
  std::vector<Edge> relaxed;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> edge_key(std::size_t u, std::size_t v) {
  return {std::min(u, v), std::max(u, v)};
}

inline std::map<std::pair<std::size_t, std::size_t>, double> weight_map(
    const SupportGraph& g) {
  std::map<std::pair<std::size_t, std::size_t>, double> w;
  for (const auto& e : g.edges) w[edge_key(e.u, e.v)] = e.weight;
  return w;
}

// Groups a multigraph with degrees <= 2 into paths and cycles. Paths start
// at their smaller endpoint, cycles at their smallest node and continue
// towards the smaller neighbour.
inline CoverSolution decode_degree_two(std::size_t n, std::vector<Edge> edges) {
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    incident[edges[k].u].push_back(k);
    incident[edges[k].v].push_back(k);
  }
  std::vector<char> used_edge(edges.size(), 0);
  std::vector<char> seen(n, 0);
  CoverSolution cs;
  cs.n = n;

  auto walk = [&](std::size_t start, CoverComponent& comp) {
    std::size_t cur = start;
    seen[cur] = 1;
    comp.nodes.push_back(cur);
    for (;;) {
      std::optional<std::size_t> next_edge;
      for (auto k : incident[cur]) {
        if (used_edge[k]) continue;
        const std::size_t other = edges[k].u == cur ? edges[k].v : edges[k].u;
        if (!next_edge) {
          next_edge = k;
        } else {
          const std::size_t best = edges[*next_edge].u == cur ? edges[*next_edge].v
                                                              : edges[*next_edge].u;
          if (other < best) next_edge = k;
        }
      }
      if (!next_edge) return;
      used_edge[*next_edge] = 1;
      const auto& e = edges[*next_edge];
      const std::size_t other = e.u == cur ? e.v : e.u;
      comp.weights.push_back(e.weight);
      if (seen[other]) return;  // closed a cycle
      seen[other] = 1;
      comp.nodes.push_back(other);
      cur = other;
    }
  };

  for (std::size_t v = 0; v < n; ++v) {
    if (!seen[v] && incident[v].size() == 1) {
      CoverComponent comp;
      comp.kind = ComponentKind::kPath;
      walk(v, comp);
      cs.components.push_back(std::move(comp));
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!seen[v] && incident[v].size() == 2) {
      CoverComponent comp;
      comp.kind = ComponentKind::kCycle;
      walk(v, comp);
      cs.components.push_back(std::move(comp));
    }
  }
  for (const auto& e : edges) cs.weight += e.weight;
  std::sort(edges.begin(), edges.end(), [](const Edge& l, const Edge& r) {
    return edge_key(l.u, l.v) < edge_key(r.u, r.v);
  });
  cs.edges = std::move(edges);
  return cs;
}

inline void check_degrees(const CoverSolution& cs) {
  std::vector<int> deg(cs.n, 0);
  for (const auto& e : cs.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  for (std::size_t v = 0; v < cs.n; ++v) {
    if (deg[v] > 2) {
      throw Error(ErrorKind::kInvalidArgument,
                  "node " + std::to_string(v + 1) + " has degree above 2", v);
    }
  }
}

}  // namespace detail

/// Two-colouring of the graph, or nullopt when it has an odd cycle.
inline std::optional<std::vector<int>> two_coloring(const SupportGraph& g) {
  const auto adj = g.adjacency();
  std::vector<int> color(g.n, -1);
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < g.n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (auto v : adj[u]) {
        if (color[v] == -1) {
          color[v] = 1 - color[u];
          stack.push_back(v);
        } else if (color[v] == color[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

inline bool is_bipartite(const SupportGraph& g) { return two_coloring(g).has_value(); }

/// Maximum-weight cycle cover from an assignment on the split graph: node i
/// on the left is matched to j' on the right when i's successor is j.
inline CoverSolution cycle_cover_general(const SupportGraph& g) {
  const std::size_t n = g.n;
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (const auto& e : g.edges) {
    w[e.u][e.v] = e.weight;
    w[e.v][e.u] = e.weight;
  }
  const auto succ = detail::max_weight_bipartite_matching(w);
  std::vector<Edge> arcs;
  for (std::size_t i = 0; i < n; ++i) {
    if (succ[i] != static_cast<std::size_t>(-1)) arcs.push_back({i, succ[i], w[i][succ[i]]});
  }
  return detail::decode_degree_two(n, std::move(arcs));
}

/// Maximum-weight subgraph with all degrees at most 2 on a bipartite graph,
/// as a min-cost flow (each edge usable once).
inline CoverSolution b2_subgraph_bipartite(const SupportGraph& g) {
  const auto color = two_coloring(g);
  if (!color) throw Error(ErrorKind::kNotBipartite, "support graph has an odd cycle");
  const std::size_t source = g.n;
  const std::size_t sink = g.n + 1;
  detail::MinCostFlow flow(g.n + 2);
  for (std::size_t v = 0; v < g.n; ++v) {
    if ((*color)[v] == 0) {
      flow.add_arc(source, v, 2, 0.0);
    } else {
      flow.add_arc(v, sink, 2, 0.0);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> handles;
  for (const auto& e : g.edges) {
    const bool u_left = (*color)[e.u] == 0;
    handles.push_back(u_left ? flow.add_arc(e.u, e.v, 1, -e.weight)
                             : flow.add_arc(e.v, e.u, 1, -e.weight));
  }
  flow.min_cost_any_flow(source, sink);
  std::vector<Edge> chosen;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    if (flow.flow_on(handles[k]) > 0) chosen.push_back(g.edges[k]);
  }
  return detail::decode_degree_two(g.n, std::move(chosen));
}

inline constexpr double kIntegerWeightScale = 1099511627776.0;  // 2^40

/// Maximum-weight subgraph with all degrees at most 2 on any graph, through
/// a maximum-weight matching in the standard gadget: node v gets two copies,
/// edge e = (u, v) gets two nodes e_u, e_v joined with weight 2B, and e_u
/// (e_v) is joined to both copies of u (v) with weight B + w_e. Weights are
/// scaled to integers of about 40 bits.
inline CoverSolution b2_subgraph_general(const SupportGraph& g) {
  if (g.edges.empty()) return detail::decode_degree_two(g.n, {});
  double max_w = 0.0;
  for (const auto& e : g.edges) max_w = std::max(max_w, e.weight);
  using W = detail::BlossomMatcher::Weight;
  std::vector<W> wi(g.edges.size());
  W big = 1;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    wi[k] = max_w > 0.0 ? static_cast<W>(std::llround(g.edges[k].weight / max_w *
                                                      kIntegerWeightScale))
                        : 0;
    big = std::max(big, wi[k] + 1);
  }
  const int copies = static_cast<int>(2 * g.n);
  std::vector<detail::BlossomMatcher::WeightedEdge> gadget;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const auto& e = g.edges[k];
    const int eu = copies + static_cast<int>(2 * k);
    const int ev = eu + 1;
    gadget.push_back({eu, ev, 2 * big});
    for (int c = 0; c < 2; ++c) {
      gadget.push_back({static_cast<int>(2 * e.u) + c, eu, big + wi[k]});
      gadget.push_back({static_cast<int>(2 * e.v) + c, ev, big + wi[k]});
    }
  }
  const int vertices = copies + static_cast<int>(2 * g.edges.size());
  const auto mate = detail::BlossomMatcher::solve(vertices, gadget);
  std::vector<Edge> chosen;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const int eu = copies + static_cast<int>(2 * k);
    if (mate[eu] >= 0 && mate[eu] < copies && mate[eu + 1] >= 0 &&
        mate[eu + 1] < copies) {
      chosen.push_back(g.edges[k]);
    }
  }
  return detail::decode_degree_two(g.n, std::move(chosen));
}

/// Drops the lightest edge of every cycle (ties: lexicographically smallest
/// node pair). A 2-cycle becomes its single edge.
inline CoverSolution break_cycles(const CoverSolution& cs) {
  std::vector<Edge> kept;
  for (const auto& comp : cs.components) {
    const std::size_t len = comp.nodes.size();
    const std::size_t links = comp.weights.size();
    std::optional<std::size_t> drop;
    if (comp.kind == ComponentKind::kCycle) {
      for (std::size_t t = 0; t < links; ++t) {
        if (!drop) {
          drop = t;
          continue;
        }
        const auto key_t = detail::edge_key(comp.nodes[t], comp.nodes[(t + 1) % len]);
        const auto key_d =
            detail::edge_key(comp.nodes[*drop], comp.nodes[(*drop + 1) % len]);
        if (comp.weights[t] < comp.weights[*drop] ||
            (comp.weights[t] == comp.weights[*drop] && key_t < key_d)) {
          drop = t;
        }
      }
    }
    for (std::size_t t = 0; t < links; ++t) {
      if (drop && t == *drop) continue;
      kept.push_back({comp.nodes[t], comp.nodes[(t + 1) % len], comp.weights[t]});
      auto& e = kept.back();
      if (e.u > e.v) std::swap(e.u, e.v);
    }
  }
  return detail::decode_degree_two(cs.n, std::move(kept));
}

/// Lays the paths out end to end (heaviest first, then by node list),
/// followed by the nodes no path touches.
inline Ordering make_ordering(const CoverSolution& cs, const SupportGraph& g) {
  detail::check_degrees(cs);
  std::vector<const CoverComponent*> paths;
  for (const auto& comp : cs.components) {
    if (comp.kind == ComponentKind::kCycle) {
      throw Error(ErrorKind::kHasCycle,
                  "cover contains a cycle through node " +
                      std::to_string(comp.nodes.front() + 1),
                  comp.nodes.front());
    }
    paths.push_back(&comp);
  }
  std::stable_sort(paths.begin(), paths.end(), [](const auto* l, const auto* r) {
    const double wl = l->weight();
    const double wr = r->weight();
    if (wl != wr) return wl > wr;
    return l->nodes < r->nodes;
  });
  Ordering ord;
  std::vector<char> placed(g.n, 0);
  for (const auto* p : paths) {
    for (auto v : p->nodes) {
      ord.pi.push_back(v);
      placed[v] = 1;
    }
  }
  for (std::size_t v = 0; v < g.n; ++v) {
    if (!placed[v]) ord.pi.push_back(v);
  }
  std::map<std::pair<std::size_t, std::size_t>, int> in_cover;
  for (const auto& e : cs.edges) in_cover[detail::edge_key(e.u, e.v)] = 1;
  for (const auto& e : g.edges) {
    (in_cover.contains(detail::edge_key(e.u, e.v)) ? ord.retained : ord.relaxed)
        .push_back(e);
  }
  return ord;
}

/// The support graph itself when it is already a union of paths.
inline std::optional<CoverSolution> as_path_cover(const SupportGraph& g) {
  std::vector<int> deg(g.n, 0);
  for (const auto& e : g.edges) {
    if (++deg[e.u] > 2 || ++deg[e.v] > 2) return std::nullopt;
  }
  auto cs = detail::decode_degree_two(g.n, g.edges);
  for (const auto& comp : cs.components) {
    if (comp.kind == ComponentKind::kCycle) return std::nullopt;
  }
  return cs;
}

enum class CoverMethod { kAuto, kBipartite, kGeneral, kCycleCover };

/// Cover, cycle breaking and layout in one call. kAuto uses the bipartite
/// solver when the graph is bipartite and the general one otherwise.
inline Ordering choose_ordering(const SupportGraph& g, CoverMethod method = CoverMethod::kAuto) {
  CoverSolution cover;
  switch (method) {
    case CoverMethod::kAuto:
      cover = is_bipartite(g) ? b2_subgraph_bipartite(g) : b2_subgraph_general(g);
      break;
    case CoverMethod::kBipartite:
      cover = b2_subgraph_bipartite(g);
      break;
    case CoverMethod::kGeneral:
      cover = b2_subgraph_general(g);
      break;
    case CoverMethod::kCycleCover:
      cover = cycle_cover_general(g);
      break;
  }
  return make_ordering(break_cycles(cover), g);
}

inline constexpr std::size_t kBruteForceMaxEdges = 20;

namespace detail {

template <bool kAcyclic>
double brute_force_degree_two(const SupportGraph& g) {
  const std::size_t m = g.edges.size();
  if (m > kBruteForceMaxEdges) {
    throw Error(ErrorKind::kTooLarge, "brute force limited to " +
                                          std::to_string(kBruteForceMaxEdges) +
                                          " edges, got " + std::to_string(m));
  }
  double best = 0.0;
  std::vector<int> deg(g.n);
  std::vector<std::size_t> parent(g.n);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    std::fill(deg.begin(), deg.end(), 0);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    bool ok = true;
    double weight = 0.0;
    for (std::size_t k = 0; k < m && ok; ++k) {
      if (!((mask >> k) & 1U)) continue;
      const auto& e = g.edges[k];
      if (++deg[e.u] > 2 || ++deg[e.v] > 2) ok = false;
      if constexpr (kAcyclic) {
        const auto ru = find(e.u);
        const auto rv = find(e.v);
        if (ru == rv) ok = false;
        parent[ru] = rv;
      }
      weight += e.weight;
    }
    if (ok) best = std::max(best, weight);
  }
  return best;
}

}  // namespace detail

/// Heaviest vertex-disjoint path cover by exhaustive search.
inline double brute_force_pstar(const SupportGraph& g) {
  return detail::brute_force_degree_two<true>(g);
}

/// Heaviest subgraph with degrees at most 2 (cycles allowed), exhaustively.
inline double brute_force_b2(const SupportGraph& g) {
  return detail::brute_force_degree_two<false>(g);
}

}  // namespace l0qp
