// Command-line front end: generate instances, solve them, inspect the
// decomposition, certify small instances and time the path solver.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "l0qp/l0qp.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    l0qp::detail::write_file(path, text);
  }
}

std::string dump(const l0qp::ordered_json& j) { return j.dump(1) + "\n"; }

l0qp::CoverMethod parse_method(const std::string& name) {
  if (name == "auto") return l0qp::CoverMethod::kAuto;
  if (name == "bipartite") return l0qp::CoverMethod::kBipartite;
  if (name == "general") return l0qp::CoverMethod::kGeneral;
  return l0qp::CoverMethod::kCycleCover;
}

struct GenOptions {
  std::string family;
  std::size_t n = 100;
  std::size_t rows = 10;
  std::size_t cols = 10;
  double sigma = 0.1;
  double mu = 0.01;
  double density = 0.1;
  std::uint64_t seed = 1;
  std::string out;
};

int run_gen(const GenOptions& o) {
  l0qp::Instance inst;
  if (o.family == "tridiag") {
    inst = l0qp::gen_tridiagonal(o.n, o.seed);
  } else if (o.family == "signal1d") {
    inst = l0qp::gen_signal1d(o.n, o.sigma, o.mu, o.seed, o.density);
  } else {
    inst = l0qp::gen_lattice2d(o.rows, o.cols, o.sigma, o.mu, o.seed, o.density);
  }
  emit(o.out, l0qp::instance_to_string(inst));
  return 0;
}

int run_solve_path(const std::string& path, const std::string& out) {
  const auto inst = l0qp::read_instance(path);
  l0qp::check_structure(inst);
  const auto g = l0qp::support_graph(inst);
  const auto cover = l0qp::as_path_cover(g);
  if (!cover) {
    throw l0qp::Error(l0qp::ErrorKind::kInvalidArgument,
                      "support graph is not a union of paths; use solve-decomp");
  }
  const auto ord = l0qp::make_ordering(*cover, g);
  const auto permuted = l0qp::permute(inst, ord.pi);
  const auto sol = l0qp::solve(l0qp::to_tridiag(permuted));

  l0qp::SolutionReport rep;
  rep.objective = sol.objective;
  rep.offset = inst.offset;
  rep.x.assign(inst.n, 0.0);
  rep.z.assign(inst.n, 0);
  for (std::size_t k = 0; k < inst.n; ++k) {
    rep.x[ord.pi[k]] = sol.x[k];
    rep.z[ord.pi[k]] = sol.z[k];
  }
  std::cerr << "objective " << std::setprecision(10) << rep.objective
            << "  with offset " << rep.objective + rep.offset << "\n";
  emit(out, dump(l0qp::solution_to_json(rep)));
  return 0;
}

struct DecompOptions {
  std::string instance;
  std::string steps = "geometric";
  double ratio = 1.01;
  double eps = 1e-4;
  std::size_t max_iter = 300;
  std::string method = "auto";
  unsigned threads = 1;
  std::string log;
  std::string out;
};

int run_solve_decomp(const DecompOptions& o) {
  const auto inst = l0qp::read_instance(o.instance);
  const auto dd = l0qp::validate(inst);
  const auto g = l0qp::support_graph(inst);
  const auto ord = l0qp::choose_ordering(g, parse_method(o.method));
  const auto relax = l0qp::build_relaxation(inst, dd, ord.pi, ord.retained);

  l0qp::DecompConfig cfg;
  cfg.schedule = o.steps == "harmonic" ? l0qp::StepSchedule::kHarmonic
                                       : l0qp::StepSchedule::kGeometric;
  cfg.ratio = o.ratio;
  cfg.eps = o.eps;
  cfg.max_iter = o.max_iter;
  cfg.threads = o.threads;
  cfg.big_m = inst.meta.big_m;
  const auto res = l0qp::run(inst, relax, cfg);

  if (!o.log.empty()) {
    std::ostringstream csv;
    l0qp::write_iteration_csv(csv, res.log);
    emit(o.log, csv.str());
  }
  if (res.big_m_violations > 0) {
    std::cerr << "warning: " << res.big_m_violations
              << " inner solution entries exceeded |x| <= M = " << *cfg.big_m << "\n";
  }
  const char* reason = res.reason == l0qp::StopReason::kConverged    ? "converged"
                       : res.reason == l0qp::StopReason::kStationary ? "stationary"
                                                                     : "iteration limit";
  std::cerr << std::setprecision(10) << "lower " << res.lower << "  upper " << res.upper
            << "  gap " << 100.0 * res.gap << "%  iterations " << res.log.size() << " ("
            << reason << ")\n";

  l0qp::SolutionReport rep;
  rep.objective = res.upper;
  rep.offset = inst.offset;
  rep.x = res.x;
  rep.z = res.z;
  rep.lower = res.lower;
  rep.upper = res.upper;
  rep.gap = res.gap;
  rep.iters = res.log.size();
  emit(o.out, dump(l0qp::solution_to_json(rep)));
  return 0;
}

int run_decompose(const std::string& path, const std::string& method, const std::string& out) {
  const auto inst = l0qp::read_instance(path);
  l0qp::validate(inst);
  const auto ord = l0qp::choose_ordering(l0qp::support_graph(inst), parse_method(method));
  emit(out, dump(l0qp::ordering_to_json(ord)));
  return 0;
}

int run_oracle(const std::string& path, const std::string& out) {
  const auto inst = l0qp::read_instance(path);
  const auto res = l0qp::enumerate(inst);
  if (res.singular_supports > 0) {
    std::cerr << "skipped " << res.singular_supports << " singular supports\n";
  }
  l0qp::SolutionReport rep;
  rep.objective = res.value;
  rep.offset = inst.offset;
  rep.x = res.x;
  rep.z = res.z;
  auto j = l0qp::solution_to_json(rep);
  j["supports_enumerated"] = res.supports_enumerated;
  emit(out, dump(j));
  return 0;
}

int run_bench(const std::vector<std::size_t>& sizes, std::size_t reps, std::uint64_t seed,
              const std::string& out) {
  std::ostringstream csv;
  csv << "n,reps,median_ms,min_ms,max_ms\n";
  for (auto n : sizes) {
    std::vector<double> times;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto p = l0qp::to_tridiag(l0qp::gen_tridiagonal(n, seed + r));
      const auto t0 = std::chrono::steady_clock::now();
      const auto sol = l0qp::solve(p);
      const auto t1 = std::chrono::steady_clock::now();
      if (!std::isfinite(sol.objective)) {
        throw l0qp::Error(l0qp::ErrorKind::kNotPositiveDefinite, "non-finite objective");
      }
      times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    const std::size_t m = times.size();
    const double median =
        m % 2 == 1 ? times[m / 2] : 0.5 * (times[m / 2 - 1] + times[m / 2]);
    csv << n << ',' << reps << ',' << median << ',' << times.front() << ','
        << times.back() << '\n';
  }
  emit(out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for convex quadratic problems with indicator variables"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("family", gen.family, "tridiag | signal1d | lattice2d")
      ->required()
      ->check(CLI::IsMember({"tridiag", "signal1d", "lattice2d"}));
  gen_cmd->add_option("--n", gen.n, "number of variables (tridiag, signal1d)");
  gen_cmd->add_option("--rows", gen.rows, "lattice rows");
  gen_cmd->add_option("--cols", gen.cols, "lattice columns");
  gen_cmd->add_option("--sigma", gen.sigma, "noise standard deviation");
  gen_cmd->add_option("--mu", gen.mu, "sparsity penalty");
  gen_cmd->add_option("--density", gen.density, "fraction of active entries");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("-o,--output", gen.out, "output file (default stdout)");

  std::string path_instance, path_out;
  auto* path_cmd = app.add_subcommand("solve-path", "exact solve of a path-structured instance");
  path_cmd->add_option("instance", path_instance)->required();
  path_cmd->add_option("-o,--output", path_out, "solution JSON (default stdout)");

  DecompOptions dec;
  auto* dec_cmd = app.add_subcommand("solve-decomp", "dual decomposition with certified bounds");
  dec_cmd->add_option("instance", dec.instance)->required();
  dec_cmd->add_option("--steps", dec.steps, "geometric | harmonic")
      ->check(CLI::IsMember({"geometric", "harmonic"}));
  dec_cmd->add_option("--ratio", dec.ratio, "geometric step ratio r in r^-(k-1)");
  dec_cmd->add_option("--eps", dec.eps, "relative gap target")->check(CLI::PositiveNumber);
  dec_cmd->add_option("--max-iter", dec.max_iter, "iteration limit")->check(CLI::PositiveNumber);
  dec_cmd->add_option("--method", dec.method, "auto | bipartite | general | cycle-cover")
      ->check(CLI::IsMember({"auto", "bipartite", "general", "cycle-cover"}));
  dec_cmd->add_option("--threads", dec.threads, "workers for the segment solves")
      ->check(CLI::PositiveNumber);
  dec_cmd->add_option("--log", dec.log, "iteration CSV path ('-' for stdout)");
  dec_cmd->add_option("-o,--output", dec.out, "solution JSON (default stdout)");

  std::string decomp_instance, decomp_method = "auto", decomp_out;
  auto* decomp_cmd = app.add_subcommand("decompose", "print the ordering and relaxed terms");
  decomp_cmd->add_option("instance", decomp_instance)->required();
  decomp_cmd->add_option("--method", decomp_method)
      ->check(CLI::IsMember({"auto", "bipartite", "general", "cycle-cover"}));
  decomp_cmd->add_option("-o,--output", decomp_out);

  std::string oracle_instance, oracle_out;
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive solve (n <= 20)");
  oracle_cmd->add_option("instance", oracle_instance)->required();
  oracle_cmd->add_option("-o,--output", oracle_out);

  std::string family = "tridiag", bench_out;
  std::vector<std::size_t> sizes{500, 1000, 2000};
  std::size_t reps = 5;
  std::uint64_t bench_seed = 1;
  auto* bench_cmd = app.add_subcommand("bench", "time the path solver over sizes");
  bench_cmd->add_option("--family", family)->check(CLI::IsMember({"tridiag"}));
  bench_cmd->add_option("--sizes", sizes)->delimiter(',');
  bench_cmd->add_option("--reps", reps)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_seed);
  bench_cmd->add_option("-o,--output", bench_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (path_cmd->parsed()) return run_solve_path(path_instance, path_out);
    if (dec_cmd->parsed()) return run_solve_decomp(dec);
    if (decomp_cmd->parsed()) return run_decompose(decomp_instance, decomp_method, decomp_out);
    if (oracle_cmd->parsed()) return run_oracle(oracle_instance, oracle_out);
    if (bench_cmd->parsed()) return run_bench(sizes, reps, bench_seed, bench_out);
  } catch (const l0qp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return l0qp::is_numerical(e.kind()) ? kExitNumerical : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
