#include "kbeam/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "kbeam/oracle.hpp"

namespace kbeam {

namespace {

const char* stop_reason_name(StopReason r) {
  return r == StopReason::stationary_point ? "stationary_point" : "max_iterations";
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
  if (cfg.iterations < 1) throw std::invalid_argument("run_experiment: iterations must be >= 1");
  if (cfg.k_values.empty()) throw std::invalid_argument("run_experiment: no k values");
  for (int k : cfg.k_values) {
    if (k < 1) throw std::invalid_argument("run_experiment: k values must be >= 1");
  }
  if (cfg.rho0 < 0.0 || cfg.eta0 < 0.0) {
    throw std::invalid_argument("run_experiment: rho0 and eta0 must be nonnegative");
  }
}

Schedule make_schedule(const ExperimentConfig& cfg) {
  Schedule s = Schedule::harmonic(cfg.rho0, cfg.eta0);
  if (cfg.epsilon) s.epsilon = cfg.epsilon;
  return s;
}

RunConfig make_run_config(const ExperimentConfig& cfg, int k, int trial) {
  const std::uint64_t child = mix_seed(cfg.seed, static_cast<std::uint64_t>(k),
                                       static_cast<std::uint64_t>(trial));
  RunConfig rc;
  rc.K = k;
  rc.N = cfg.iterations;
  rc.schedule = make_schedule(cfg);
  rc.check_every = cfg.stationarity_every;
  rc.seed = child;
  if (cfg.init_box) {
    SplitMix64 rng(child);
    rc.u0 = sample_uniform(*cfg.init_box, rng);
    Beam beam;
    for (int j = 0; j < k; ++j) beam.candidates.push_back(sample_uniform(*cfg.init_box, rng));
    rc.beam0 = std::move(beam);
  }
  return rc;
}

// One seeded trial; records one row per completed iteration.
std::vector<TrialRecord> run_trial(const BenchmarkSurface& surface, const ExperimentConfig& cfg,
                                   int k, int trial) {
  const RunConfig rc = make_run_config(cfg, k, trial);

  std::vector<TrialRecord> rows;
  rows.reserve(cfg.iterations);
  const Observer observer = [&](int iter, const Vector& u, const Beam&, double phi_hat) {
    TrialRecord row;
    row.k = k;
    row.trial = trial;
    row.iter = iter;
    row.u = u;
    row.dist = distance_to_solution(u, surface.minimax_u_set);
    row.phi_hat = phi_hat;
    rows.push_back(std::move(row));
  };
  const RunState state = run(surface.problem, rc, observer);
  for (TrialRecord& row : rows) row.stop_reason = state.stop_reason;
  return rows;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const BenchmarkSurface surface = get_surface(cfg.surface);
  if (!cfg.init_box && !surface.problem.domain_u.bounded()) {
    throw std::invalid_argument("run_experiment: surface '" + cfg.surface +
                                "' has unbounded domains; an init box is required");
  }

  struct Job {
    int k;
    int trial;
  };
  std::vector<Job> jobs;
  for (int k : cfg.k_values) {
    for (int t = 0; t < cfg.trials; ++t) jobs.push_back({k, t});
  }

  // Each job writes its own slot, so any worker count yields the same result.
  std::vector<std::vector<TrialRecord>> batches(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers =
      cfg.workers > 0 ? static_cast<unsigned>(cfg.workers) : std::min<unsigned>(hw, 16);

  const auto work = [&]() {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size() || failed.load()) break;
      try {
        batches[j] = run_trial(surface, cfg, jobs[j].k, jobs[j].trial);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        break;
      }
    }
  };

  if (workers <= 1 || jobs.size() <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  ExperimentResult result;
  result.surface = cfg.surface;
  result.dim_u = surface.problem.dim_u;
  for (auto& batch : batches) {
    result.records.insert(result.records.end(), std::make_move_iterator(batch.begin()),
                          std::make_move_iterator(batch.end()));
  }
  std::sort(result.records.begin(), result.records.end(),
            [](const TrialRecord& a, const TrialRecord& b) {
              return std::tie(a.k, a.trial, a.iter) < std::tie(b.k, b.trial, b.iter);
            });

  // Per-(k, iter) mean and sample std of the distance metric.
  std::vector<int> ks = cfg.k_values;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  for (int k : ks) {
    std::vector<double> sum(cfg.iterations + 1, 0.0);
    std::vector<double> sum_sq(cfg.iterations + 1, 0.0);
    std::vector<int> n(cfg.iterations + 1, 0);
    for (const TrialRecord& row : result.records) {
      if (row.k != k) continue;
      sum[row.iter] += row.dist;
      sum_sq[row.iter] += row.dist * row.dist;
      ++n[row.iter];
    }
    for (int iter = 1; iter <= cfg.iterations; ++iter) {
      if (n[iter] == 0) continue;  // all trials stopped before this iteration
      SummaryRow s;
      s.k = k;
      s.iter = iter;
      s.mean_dist = sum[iter] / n[iter];
      s.std_dist = n[iter] > 1
                       ? std::sqrt(std::max(0.0, (sum_sq[iter] - sum[iter] * sum[iter] / n[iter]) /
                                                     (n[iter] - 1)))
                       : 0.0;
      result.summary.push_back(s);
    }
  }
  return result;
}

void write_csv(const ExperimentResult& result, std::ostream& trials_out,
               std::ostream& summary_out) {
  trials_out << "surface,k,trial,iter";
  for (int j = 0; j < result.dim_u; ++j) trials_out << ",u" << j;
  trials_out << ",dist,phi_hat,stop_reason\n";
  for (const TrialRecord& row : result.records) {
    trials_out << result.surface << ',' << row.k << ',' << row.trial << ',' << row.iter;
    for (int j = 0; j < result.dim_u; ++j) trials_out << ',' << fmt17(row.u[j]);
    trials_out << ',' << fmt17(row.dist) << ',' << fmt17(row.phi_hat) << ','
               << stop_reason_name(row.stop_reason) << '\n';
  }

  summary_out << "surface,k,iter,mean_dist,std_dist\n";
  for (const SummaryRow& row : result.summary) {
    summary_out << result.surface << ',' << row.k << ',' << row.iter << ','
                << fmt17(row.mean_dist) << ',' << fmt17(row.std_dist) << '\n';
  }
}

void write_csv(const ExperimentResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path trials_path = fs::path(out_dir) / "trials.csv";
  const fs::path summary_path = fs::path(out_dir) / "summary.csv";
  std::ofstream trials(trials_path);
  std::ofstream summary(summary_path);
  if (!trials) throw std::runtime_error("write_csv: cannot open " + trials_path.string());
  if (!summary) throw std::runtime_error("write_csv: cannot open " + summary_path.string());
  write_csv(result, trials, summary);
  if (!trials.flush() || !summary.flush()) {
    throw std::runtime_error("write_csv: write failed under " + out_dir);
  }
}

DiagnosticResult diagnose(const ExperimentConfig& cfg, double grid_step) {
  validate(cfg);
  if (cfg.k_values.size() != 1) {
    throw std::invalid_argument("diagnose: exactly one k value expected");
  }
  const BenchmarkSurface surface = get_surface(cfg.surface);
  const MinimaxProblem& p = surface.problem;
  if (!p.domain_u.bounded() || !p.domain_v.bounded()) {
    throw std::invalid_argument("diagnose: surface '" + cfg.surface +
                                "' needs bounded domains for the grid oracle");
  }
  const int k = cfg.k_values.front();

  const Grid1D ugrid(p.domain_u.lower[0], p.domain_u.upper[0], grid_step);
  const Grid1D vgrid(p.domain_v.lower[0], p.domain_v.upper[0], grid_step);
  const double lips = estimate_lipschitz(p, ugrid, vgrid).l;

  // Snapshot the trajectory first, then evaluate the oracle along it.
  struct Snapshot {
    int iter;
    Vector u;
    Beam beam;
  };
  std::vector<Snapshot> path;
  const RunConfig rc = make_run_config(cfg, k, 0);
  run(p, rc, [&](int iter, const Vector& u, const Beam& beam, double) {
    path.push_back({iter, u, beam});
  });

  DiagnosticResult result;
  result.surface = cfg.surface;
  result.k = k;
  result.lipschitz_l = lips;
  const Schedule schedule = make_schedule(cfg);
  for (const Snapshot& snap : path) {
    DiagnosticRow row;
    row.iter = snap.iter;
    row.u = snap.u;
    row.dist = distance_to_solution(snap.u, surface.minimax_u_set);
    const std::vector<Vector> maximizers = r_eps_grid(p, snap.u, vgrid, 0.0);
    const std::vector<Vector> local_max = local_maxima_grid(p, snap.u, vgrid);
    row.dh_r_a = hausdorff_one_sided(maximizers, snap.beam.candidates);
    row.dh_a_s = hausdorff_one_sided(snap.beam.candidates, local_max);
    row.zeta = zeta_gap(p, snap.u, vgrid);
    const double eps_i = schedule.epsilon(snap.iter);
    const double delta = std::max(row.dh_r_a, row.dh_a_s);
    row.lemma_ok = lips > 0.0 ? delta < 0.5 * (row.zeta - eps_i) / lips
                              : std::isinf(row.zeta);
    result.rows.push_back(std::move(row));
  }
  return result;
}

void write_diagnostics_csv(const DiagnosticResult& result, std::ostream& out) {
  const int dim_u = result.rows.empty() ? 1 : static_cast<int>(result.rows.front().u.size());
  out << "surface,k,iter";
  for (int j = 0; j < dim_u; ++j) out << ",u" << j;
  out << ",dist,dh_r_a,dh_a_s,zeta,lemma5_ok\n";
  for (const DiagnosticRow& row : result.rows) {
    out << result.surface << ',' << result.k << ',' << row.iter;
    for (int j = 0; j < dim_u; ++j) out << ',' << fmt17(row.u[j]);
    out << ',' << fmt17(row.dist) << ',' << fmt17(row.dh_r_a) << ',' << fmt17(row.dh_a_s) << ','
        << fmt17(row.zeta) << ',' << (row.lemma_ok ? 1 : 0) << '\n';
  }
}

void write_diagnostics_csv(const DiagnosticResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path path = fs::path(out_dir) / "diagnostics.csv";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_diagnostics_csv: cannot open " + path.string());
  write_diagnostics_csv(result, out);
  if (!out.flush()) throw std::runtime_error("write_diagnostics_csv: write failed at " + path.string());
}

}  // namespace kbeam
