// The four-variable star instance: exact optimum by enumeration, then the
// decomposition that keeps the path 1-2-3 and dualizes the (2,4) term.

#include <cstdio>

#include "l0qp/l0qp.hpp"

int main() {
  l0qp::Instance inst;
  inst.n = 4;
  inst.a = {2, 2, 2, 2};
  inst.c = {-1.3, -2.5, 4.6, -7.8};
  inst.q = {{0, 0, 3.0}, {0, 1, -1.5}, {1, 1, 6.0}, {1, 2, -1.0},
            {1, 3, -0.8}, {2, 2, 3.0}, {3, 3, 2.0}};

  const auto exact = l0qp::enumerate(inst);
  std::printf("optimum %.4f at x = (%.3f, %.3f, %.3f, %.3f)\n", exact.value, exact.x[0],
              exact.x[1], exact.x[2], exact.x[3]);

  const auto dd = l0qp::validate(inst);
  const auto g = l0qp::support_graph(inst);
  const auto ord = l0qp::choose_ordering(g);
  const auto relax = l0qp::build_relaxation(inst, dd, ord.pi, ord.retained);

  l0qp::DecompConfig cfg;
  cfg.ratio = 1.01;
  cfg.eps = 1e-4;
  cfg.max_iter = 50;
  const auto res = l0qp::run(inst, relax, cfg);
  std::printf("%4s %10s %10s %10s %8s\n", "k", "h", "lower", "upper", "gap%");
  for (const auto& r : res.log) {
    std::printf("%4zu %10.4f %10.4f %10.4f %8.3f\n", r.k, r.h, r.lower, r.upper,
                100.0 * r.gap);
  }
  return 0;
}
