// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Thresholds are fixed here, not tuned at runtime.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kbeam/harness.hpp"
#include "kbeam/hull.hpp"
#include "kbeam/optimizer.hpp"
#include "kbeam/oracle.hpp"
#include "kbeam/problem.hpp"
#include "kbeam/surfaces.hpp"
#include "support/test_oracles.hpp"

using namespace kbeam;
namespace chrono = std::chrono;

namespace {

int g_failures = 0;

void report(int number, const std::string& title, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", number, title.c_str(),
              detail.c_str());
  if (!ok) ++g_failures;
}

Vector vec1(double x) {
  Vector v(1);
  v[0] = x;
  return v;
}

struct FinalStats {
  double mean = 0.0;
  double frac_within(const std::vector<double>& dists, double radius) const {
    int hits = 0;
    for (double d : dists) hits += d <= radius;
    return static_cast<double>(hits) / static_cast<double>(dists.size());
  }
};

// Final-iteration distances per K for one surface sweep with the paper
// defaults (100 trials, N = 200, rho0 = eta0 = 0.1, eps = 0).
std::map<int, std::vector<double>> final_distances(const std::string& surface,
                                                   const std::vector<int>& ks) {
  ExperimentConfig cfg;
  cfg.surface = surface;
  cfg.k_values = ks;
  cfg.trials = 100;
  cfg.iterations = 200;
  cfg.seed = 42;
  const ExperimentResult result = run_experiment(cfg);
  std::map<int, std::vector<double>> out;
  for (const TrialRecord& row : result.records) {
    if (row.iter == cfg.iterations) out[row.k].push_back(row.dist);
  }
  return out;
}

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double frac_within(const std::vector<double>& xs, double radius) {
  int hits = 0;
  for (double x : xs) hits += x <= radius;
  return static_cast<double>(hits) / static_cast<double>(xs.size());
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

void criterion_1() {
  const auto start = chrono::steady_clock::now();
  bool ok = true;
  std::ostringstream detail;
  for (const char* surface : {"saddle", "rotated_saddle"}) {
    const auto dists = final_distances(surface, {1, 2, 5, 10});
    for (const auto& [k, ds] : dists) {
      const double mean = mean_of(ds);
      const double frac = frac_within(ds, 0.1);
      const bool this_ok = mean <= 0.05 && frac >= 0.95;
      ok &= this_ok;
      if (!this_ok) {
        detail << surface << " K=" << k << ": mean=" << fmt(mean) << " frac<=0.1=" << fmt(frac)
               << "; ";
      }
    }
  }
  const double secs = chrono::duration<double>(chrono::steady_clock::now() - start).count();
  ok &= secs < 5.0;
  detail << "runtime " << fmt(secs) << "s";
  report(1, "convergent surfaces (a),(b): mean <= 0.05, 95% of trials <= 0.1, < 5s", ok,
         detail.str());
}

void criterion_2_and_3() {
  const auto start = chrono::steady_clock::now();
  std::map<std::string, std::map<int, std::vector<double>>> all;
  for (const char* surface : {"monkey_saddle", "anti_saddle", "weapons"}) {
    all[surface] = final_distances(surface, {1, 2, 5, 10});
  }
  const double secs = chrono::duration<double>(chrono::steady_clock::now() - start).count();

  bool ok = true;
  std::ostringstream detail;
  for (const auto& [surface, per_k] : all) {
    const double mean1 = mean_of(per_k.at(1));
    if (mean1 < 0.1) {
      ok = false;
      detail << surface << " K=1 mean=" << fmt(mean1) << " (want >= 0.1); ";
    }
    const double mean10 = mean_of(per_k.at(10));
    const double frac10 = frac_within(per_k.at(10), 0.05);
    if (!(mean10 <= 0.05 && frac10 >= 0.90)) {
      ok = false;
      detail << surface << " K=10 mean=" << fmt(mean10) << " frac<=0.05=" << fmt(frac10) << "; ";
    }
  }
  if (secs >= 30.0) ok = false;
  detail << "runtime " << fmt(secs) << "s";
  report(2, "Alt-GD fails on (d),(e),(f) while K=10 succeeds, < 30s", ok, detail.str());

  const auto& anti = all.at("anti_saddle");
  const double m1 = mean_of(anti.at(1));
  const double m2 = mean_of(anti.at(2));
  const double m10 = mean_of(anti.at(10));
  const bool ok3 = (m2 <= m1 - 0.05) && (m10 <= m2);
  report(3, "anti-saddle: K=2 improves on K=1 by >= 0.05 and K=10 at least matches K=2", ok3,
         "means K1=" + fmt(m1) + " K2=" + fmt(m2) + " K10=" + fmt(m10));
}

void criterion_4() {
  bool ok = true;
  std::ostringstream detail;
  int compared = 0;
  for (const char* name : {"saddle", "anti_saddle", "seesaw"}) {
    const BenchmarkSurface s = get_surface(name);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      SplitMix64 rng(seed);
      const Vector u0 = sample_uniform(s.problem.domain_u, rng);
      const Vector v0 = sample_uniform(s.problem.domain_v, rng);

      RunConfig cfg;
      cfg.K = 1;
      cfg.N = 200;
      cfg.u0 = u0;
      cfg.beam0 = Beam{{v0}};
      std::vector<Vector> u_path;
      run(s.problem, cfg,
          [&](int, const Vector& u, const Beam&, double) { u_path.push_back(u); });

      const testing::AltGdResult ref =
          testing::alt_gd_reference(s.problem, u0, v0, 0.1, 0.1, 200);
      for (std::size_t i = 0; i < u_path.size(); ++i) {
        ++compared;
        if (u_path[i] != ref.u_path[i]) {
          ok = false;
          detail << name << " seed " << seed << " diverges at iteration " << i + 1 << "; ";
          break;
        }
      }
    }
  }
  detail << compared << " iterates compared bitwise";
  report(4, "run(K=1, eps=0) equals a directly-coded Eq.(1) loop bit for bit", ok, detail.str());
}

void criterion_5() {
  const BenchmarkSurface s = get_surface("unconstrained_quadratic");
  const BoxDomain init = BoxDomain::cube(1, -0.5, 0.5);
  int passed = 0;
  double worst = 0.0;
  bool monotone = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SplitMix64 rng(seed);
    RunConfig cfg;
    cfg.K = 2;
    cfg.N = 500;
    cfg.u0 = sample_uniform(init, rng);
    cfg.beam0 = Beam{{sample_uniform(init, rng), sample_uniform(init, rng)}};

    double best_true_phi = std::numeric_limits<double>::infinity();
    double prev_best = best_true_phi;
    run(s.problem, cfg, [&](int, const Vector& u, const Beam&, double) {
      best_true_phi = std::min(best_true_phi, 0.5 * u[0] * u[0]);
      if (best_true_phi > prev_best) monotone = false;
      prev_best = best_true_phi;
    });
    worst = std::max(worst, best_true_phi);
    if (best_true_phi <= 1e-3) ++passed;
  }
  const bool ok = monotone && passed == 10;
  report(5, "surface (g): running min of true phi ends <= 1e-3 for 10/10 seeds", ok,
         std::to_string(passed) + "/10 seeds, worst best-phi " + fmt(worst) +
             (monotone ? "" : ", running min not monotone"));
}

void criterion_6() {
  SplitMix64 rng(2025);
  bool ok = true;
  double worst = 0.0;
  for (const std::string& name : surface_names()) {
    const BenchmarkSurface s = get_surface(name);
    const bool bounded = s.problem.domain_u.bounded();
    const BoxDomain box_u =
        bounded ? s.problem.domain_u : BoxDomain::cube(s.problem.dim_u, -1.0, 1.0);
    const BoxDomain box_v =
        bounded ? s.problem.domain_v : BoxDomain::cube(s.problem.dim_v, -1.0, 1.0);
    std::vector<std::pair<Vector, Vector>> points;
    for (int t = 0; t < 100; ++t) {
      points.emplace_back(sample_uniform(box_u, rng), sample_uniform(box_v, rng));
    }
    const GradientCheckReport rep = validate_gradients(s.problem, points, 1e-5);
    worst = std::max(worst, rep.max_rel_error);
    ok &= rep.max_rel_error <= 1e-5 && rep.checked > 0;
  }
  report(6, "all surfaces pass gradient validation at 100 random interior points", ok,
         "max relative error " + fmt(worst));
}

void criterion_7() {
  SplitMix64 rng(2026);
  bool ok = true;
  std::ostringstream detail;
  for (const char* name : {"saddle", "anti_saddle", "unconstrained_quadratic"}) {
    const BenchmarkSurface s = get_surface(name);
    const bool bounded = s.problem.domain_v.bounded();
    const Grid1D vgrid = bounded ? Grid1D(-0.5, 0.5, 1e-3) : Grid1D(-5.0, 5.0, 1e-3);
    const Grid1D ugrid = bounded ? Grid1D(-0.5, 0.5, 1e-3) : Grid1D(-1.0, 1.0, 1e-3);
    const double l = estimate_lipschitz(s.problem, ugrid, vgrid).l;

    double worst_phi = 0.0;
    for (int t = 0; t < 50; ++t) {
      const Vector u = vec1(rng.uniform(ugrid.lower, ugrid.upper));
      worst_phi =
          std::max(worst_phi, std::abs(phi_grid(s.problem, u, vgrid) - s.phi_closed_form(u)));
    }
    const GridMinimaxResult gm = grid_minimax(s.problem, ugrid, vgrid);
    const double gm_dist = distance_to_solution(gm.u_hat, s.minimax_u_set);
    const bool this_ok = worst_phi <= l * vgrid.step && gm_dist <= 2.0 * ugrid.step;
    ok &= this_ok;
    detail << name << ": |phi err| " << fmt(worst_phi) << " <= " << fmt(l * vgrid.step)
           << ", u_hat dist " << fmt(gm_dist) << "; ";
  }
  report(7, "grid oracle matches closed-form phi and locates the minimizers", ok, detail.str());
}

void criterion_8() {
  SplitMix64 rng(2027);
  bool cert_ok = true;
  double worst_violation = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 6);
    const int dim = 1 + static_cast<int>(rng.next_u64() % 4);
    std::vector<Vector> zs;
    for (int j = 0; j < n; ++j) {
      Vector z(dim);
      for (int c = 0; c < dim; ++c) z[c] = rng.uniform(-1.0, 1.0);
      zs.push_back(z);
    }
    const HullPoint hp = min_norm_point(zs, 1e-9);
    for (const Vector& z : zs) {
      worst_violation = std::max(worst_violation, -hp.point.dot(z - hp.point));
    }
  }
  cert_ok = worst_violation <= 1e-9;

  bool grid_ok = true;
  double worst_gap = 0.0;
  for (int t = 0; t < 150; ++t) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 4);
    const int dim = 1 + static_cast<int>(rng.next_u64() % 3);
    std::vector<Vector> zs;
    for (int j = 0; j < n; ++j) {
      Vector z(dim);
      for (int c = 0; c < dim; ++c) z[c] = rng.uniform(-1.0, 1.0);
      zs.push_back(z);
    }
    const double wolfe = min_norm_point(zs, 1e-9).point.norm();
    const double grid = testing::refined_simplex_grid_min_norm(zs);
    const double exact = testing::face_enum_min_norm(zs);
    if (std::abs(grid - exact) > 1e-7) grid_ok = false;  // oracle self-consistency
    worst_gap = std::max(worst_gap, std::abs(wolfe - grid));
  }
  grid_ok &= worst_gap <= 1e-6;

  report(8, "min-norm QP: Wolfe certificate at 1e-9 and brute-force agreement within 1e-6",
         cert_ok && grid_ok,
         "worst certificate violation " + fmt(worst_violation) + ", worst oracle gap " +
             fmt(worst_gap));
}

void criterion_9() {
  const BenchmarkSurface s = get_surface("anti_saddle");
  const StationarityResult r =
      epsilon_stationarity_check(s.problem, vec1(0.0), {vec1(-0.5), vec1(0.5)}, 0.0, 1e-9);
  report(9, "stationarity detection at the anti-saddle tie", r.stationary &&
             r.certificate_norm <= 1e-12,
         "certificate norm " + fmt(r.certificate_norm));
}

void criterion_10() {
  namespace fs = std::filesystem;
  ExperimentConfig cfg;
  cfg.surface = "anti_saddle";
  cfg.k_values = {1, 2, 5, 10};
  cfg.trials = 100;
  cfg.iterations = 200;
  cfg.seed = 42;

  const auto render = [&](int workers) {
    cfg.workers = workers;
    std::ostringstream trials, summary;
    write_csv(run_experiment(cfg), trials, summary);
    return std::make_pair(trials.str(), summary.str());
  };
  const auto [t1, s1] = render(0);
  const auto [t2, s2] = render(0);
  const auto [t3, s3] = render(1);
  const auto [t4, s4] = render(7);

  // Same bytes through the file path as well.
  const fs::path dir = fs::temp_directory_path() / "kbeam_acceptance_csv";
  const ExperimentResult result = run_experiment(cfg);
  write_csv(result, dir.string());
  std::ifstream tf(dir / "trials.csv"), sf(dir / "summary.csv");
  std::stringstream t5, s5;
  t5 << tf.rdbuf();
  s5 << sf.rdbuf();
  fs::remove_all(dir);

  const bool ok = t1 == t2 && s1 == s2 && t1 == t3 && s1 == s3 && t1 == t4 && s1 == s4 &&
                  t1 == t5.str() && s1 == s5.str();
  report(10, "two identical sweeps produce byte-identical csv at any worker count", ok,
         ok ? "trials.csv " + std::to_string(t1.size()) + " bytes" : "byte mismatch");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2_and_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d/10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
