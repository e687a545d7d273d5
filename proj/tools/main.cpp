// kbeam: experiment CLI for the K-beam minimax library.
//
//   kbeam run      --surface <name> --k 1,2,5,10 --trials 100 --iters 200 ...
//   kbeam diagnose --surface <name> --k <K> --seed <s> --out <dir>
//   kbeam validate
//
// Exit codes: 0 success, 1 config error, 2 runtime failure.

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "kbeam/harness.hpp"
#include "kbeam/oracle.hpp"
#include "kbeam/problem.hpp"
#include "kbeam/surfaces.hpp"

namespace {

namespace fs = std::filesystem;
using namespace kbeam;

struct CliOptions {
  std::string surface;
  std::vector<int> k_values{1, 2, 5, 10};
  int trials = 100;
  int iters = 200;
  double rho0 = 0.1;
  double eta0 = 0.1;
  double eps0 = 0.0;
  std::uint64_t seed = 42;
  int stationarity_every = 0;
  int workers = 0;
  std::vector<double> init_box;  // lo hi, applied per coordinate
  std::string out_dir;
  int diag_k = 2;
};

ExperimentConfig to_config(const CliOptions& opt, const std::vector<int>& ks) {
  ExperimentConfig cfg;
  cfg.surface = opt.surface;
  cfg.k_values = ks;
  cfg.trials = opt.trials;
  cfg.iterations = opt.iters;
  cfg.rho0 = opt.rho0;
  cfg.eta0 = opt.eta0;
  if (opt.eps0 > 0.0) {
    const double eps0 = opt.eps0;
    cfg.epsilon = [eps0](int i) { return eps0 / i; };
  }
  cfg.seed = opt.seed;
  cfg.stationarity_every = opt.stationarity_every;
  cfg.workers = opt.workers;
  if (!opt.init_box.empty()) {
    const BenchmarkSurface s = get_surface(opt.surface);
    cfg.init_box = BoxDomain::cube(s.problem.dim_u, opt.init_box[0], opt.init_box[1]);
  }
  return cfg;
}

// Output files are opened before any trial runs so unwritable paths fail fast.
struct OpenCsv {
  std::ofstream trials;
  std::ofstream summary;
};

OpenCsv open_outputs(const std::string& out_dir) {
  fs::create_directories(out_dir);
  OpenCsv files;
  files.trials.open(fs::path(out_dir) / "trials.csv");
  files.summary.open(fs::path(out_dir) / "summary.csv");
  if (!files.trials || !files.summary) {
    throw std::invalid_argument("cannot open output files under '" + out_dir + "'");
  }
  return files;
}

int cmd_run(const CliOptions& opt) {
  ExperimentConfig cfg = to_config(opt, opt.k_values);
  get_surface(cfg.surface);  // fail on unknown names before touching the disk
  OpenCsv files = open_outputs(opt.out_dir);
  const ExperimentResult result = run_experiment(cfg);
  write_csv(result, files.trials, files.summary);
  if (!files.trials.flush() || !files.summary.flush()) {
    throw std::runtime_error("write failed under '" + opt.out_dir + "'");
  }
  std::cout << "wrote " << (fs::path(opt.out_dir) / "trials.csv").string() << " ("
            << result.records.size() << " rows) and summary.csv (" << result.summary.size()
            << " rows)\n";
  return 0;
}

int cmd_diagnose(const CliOptions& opt) {
  ExperimentConfig cfg = to_config(opt, {opt.diag_k});
  cfg.trials = 1;
  get_surface(cfg.surface);
  fs::create_directories(opt.out_dir);
  std::ofstream out(fs::path(opt.out_dir) / "diagnostics.csv");
  if (!out) throw std::invalid_argument("cannot open output files under '" + opt.out_dir + "'");
  const DiagnosticResult result = diagnose(cfg);
  write_diagnostics_csv(result, out);
  if (!out.flush()) throw std::runtime_error("write failed under '" + opt.out_dir + "'");
  std::cout << "wrote " << (fs::path(opt.out_dir) / "diagnostics.csv").string() << " ("
            << result.rows.size() << " rows, l=" << result.lipschitz_l << ")\n";
  return 0;
}

bool report(const std::string& what, bool ok, const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << " (" << detail << ")\n";
  return ok;
}

int cmd_validate() {
  bool all_ok = true;
  SplitMix64 rng(12345);

  for (const std::string& name : surface_names()) {
    const BenchmarkSurface s = get_surface(name);
    const MinimaxProblem& p = s.problem;
    const bool bounded = p.domain_u.bounded() && p.domain_v.bounded();
    const BoxDomain sample_u = bounded ? p.domain_u : BoxDomain::cube(p.dim_u, -1.0, 1.0);
    const BoxDomain sample_v = bounded ? p.domain_v : BoxDomain::cube(p.dim_v, -1.0, 1.0);

    std::vector<std::pair<Vector, Vector>> points;
    for (int t = 0; t < 100; ++t) {
      points.emplace_back(sample_uniform(sample_u, rng), sample_uniform(sample_v, rng));
    }
    const GradientCheckReport rep = validate_gradients(p, points, 1e-5);
    all_ok &= report("gradients " + name, rep.max_rel_error <= 1e-5 && rep.checked > 0,
                     "max rel err " + std::to_string(rep.max_rel_error) + " over " +
                         std::to_string(rep.checked) + " points");

    if (s.phi_closed_form) {
      const Grid1D vgrid = bounded ? Grid1D(p.domain_v.lower[0], p.domain_v.upper[0], 1e-3)
                                   : Grid1D(-5.0, 5.0, 1e-3);
      const Grid1D ugrid = bounded ? Grid1D(p.domain_u.lower[0], p.domain_u.upper[0], 1e-3)
                                   : Grid1D(-1.0, 1.0, 1e-3);
      const double l = estimate_lipschitz(p, ugrid, vgrid).l;
      const BoxDomain u_box = BoxDomain::cube(1, ugrid.lower, ugrid.upper);
      double worst = 0.0;
      for (int t = 0; t < 50; ++t) {
        const Vector u = sample_uniform(u_box, rng);
        worst = std::max(worst, std::abs(phi_grid(p, u, vgrid) - s.phi_closed_form(u)));
      }
      all_ok &= report("phi oracle " + name, worst <= l * vgrid.step,
                       "max |phi_grid - phi| = " + std::to_string(worst) +
                           ", bound " + std::to_string(l * vgrid.step));

      const GridMinimaxResult gm = grid_minimax(p, ugrid, vgrid);
      const double gm_dist = distance_to_solution(gm.u_hat, s.minimax_u_set);
      all_ok &= report("grid minimax " + name, gm_dist <= 2.0 * ugrid.step,
                       "dist(u_hat, U*) = " + std::to_string(gm_dist));
    }

    for (const auto& [su, sv] : s.saddle_points) {
      const double f_star = p.f(su, sv);
      bool ok = true;
      const Grid1D g(-0.5, 0.5, 0.01);
      for (int j = 0; j < g.count; ++j) {
        Vector w(1);
        w[0] = g.point(j);
        if (p.f(su, w) > f_star + 1e-12 || p.f(w, sv) < f_star - 1e-12) ok = false;
      }
      all_ok &= report("saddle inequalities " + name, ok,
                       "f(u*,v) <= f* <= f(u,v*) on a 101-point grid");
    }
  }
  return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-beam epsilon-subgradient descent for continuous minimax problems"};
  app.require_subcommand(1);
  CliOptions opt;

  CLI::App* run_cmd = app.add_subcommand("run", "Multi-trial, multi-K convergence sweep");
  run_cmd->add_option("--surface", opt.surface, "Benchmark surface name")->required();
  run_cmd->add_option("--k", opt.k_values, "Beam sizes, comma separated")->delimiter(',');
  run_cmd->add_option("--trials", opt.trials, "Trials per beam size");
  run_cmd->add_option("--iters", opt.iters, "Iterations per trial");
  run_cmd->add_option("--rho0", opt.rho0, "Min-step scale: rho_i = rho0/i");
  run_cmd->add_option("--eta0", opt.eta0, "Max-step scale: eta_i = eta0/i");
  run_cmd->add_option("--eps0", opt.eps0, "Approximation scale: eps_i = eps0/i (0 = exact)");
  run_cmd->add_option("--seed", opt.seed, "Master seed");
  run_cmd->add_option("--stationarity-every", opt.stationarity_every,
                      "Check the stopping criterion every M iterations (0 = off)");
  run_cmd->add_option("--workers", opt.workers, "Worker threads (0 = hardware)");
  run_cmd->add_option("--init-box", opt.init_box,
                      "Sample u0 and beams from [LO,HI] instead of the domain")
      ->expected(2);
  run_cmd->add_option("--out", opt.out_dir, "Output directory")->required();

  CLI::App* diag_cmd = app.add_subcommand("diagnose", "Grid-oracle diagnostics for one trial");
  diag_cmd->add_option("--surface", opt.surface, "Benchmark surface name")->required();
  diag_cmd->add_option("--k", opt.diag_k, "Beam size");
  diag_cmd->add_option("--iters", opt.iters, "Iterations");
  diag_cmd->add_option("--rho0", opt.rho0, "Min-step scale");
  diag_cmd->add_option("--eta0", opt.eta0, "Max-step scale");
  diag_cmd->add_option("--eps0", opt.eps0, "Approximation scale");
  diag_cmd->add_option("--seed", opt.seed, "Master seed");
  diag_cmd->add_option("--out", opt.out_dir, "Output directory")->required();

  app.add_subcommand("validate", "Gradient and oracle self-checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand("run")) return cmd_run(opt);
    if (app.got_subcommand("diagnose")) return cmd_diagnose(opt);
    return cmd_validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
