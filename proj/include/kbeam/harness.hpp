#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kbeam/optimizer.hpp"
#include "kbeam/surfaces.hpp"

namespace kbeam {

/// A multi-trial, multi-K sweep over one benchmark surface.
struct ExperimentConfig {
  std::string surface;
  std::vector<int> k_values{1, 2, 5, 10};
  int trials = 100;
  int iterations = 200;
  double rho0 = 0.1;
  double eta0 = 0.1;
  /// Approximation schedule; null means eps_i identically zero.
  std::function<double(int)> epsilon;
  std::uint64_t seed = 42;
  /// Check the stopping criterion every M iterations; 0 disables it.
  int stationarity_every = 0;
  /// Thread count for trial-level parallelism; 0 picks the hardware default.
  /// The output is identical for every worker count.
  int workers = 0;
  /// Initial u0 and beam candidates are sampled from this box instead of the
  /// problem domains. Required for surfaces with unbounded domains.
  std::optional<BoxDomain> init_box;
};

struct TrialRecord {
  int k = 0;
  int trial = 0;
  int iter = 0;
  Vector u;
  double dist = 0.0;
  double phi_hat = 0.0;
  StopReason stop_reason = StopReason::max_iterations;
};

struct SummaryRow {
  int k = 0;
  int iter = 0;
  double mean_dist = 0.0;
  double std_dist = 0.0;  // sample standard deviation; 0 for a single trial
};

struct ExperimentResult {
  std::string surface;
  int dim_u = 1;
  std::vector<TrialRecord> records;  // sorted by (k, trial, iter)
  std::vector<SummaryRow> summary;   // sorted by (k, iter)
};

/// Runs trials x k_values seeded runs. Child seed for (k, trial) is
/// mix_seed(seed, k, trial); trials execute in parallel with output identical
/// to sequential execution.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// trials.csv: surface,k,trial,iter,u0[,u1,...],dist,phi_hat,stop_reason
/// summary.csv: surface,k,iter,mean_dist,std_dist
/// Floats are written with 17 significant digits.
void write_csv(const ExperimentResult& result, std::ostream& trials_out,
               std::ostream& summary_out);

/// Convenience wrapper writing <out_dir>/trials.csv and <out_dir>/summary.csv.
void write_csv(const ExperimentResult& result, const std::string& out_dir);

/// Per-iteration oracle diagnostics for a single trial (Hausdorff distances
/// of the beam against the grid-oracle maximizer sets, the global/non-global
/// gap zeta, and whether delta < 0.5 (zeta - eps) / l held).
struct DiagnosticRow {
  int iter = 0;
  Vector u;
  double dist = 0.0;
  double dh_r_a = 0.0;   // d_H(R(u_i), A_i)
  double dh_a_s = 0.0;   // d_H(A_i, S(u_i))
  double zeta = 0.0;     // +inf when all local maxima are global
  bool lemma_ok = false;
};

struct DiagnosticResult {
  std::string surface;
  int k = 0;
  double lipschitz_l = 0.0;
  std::vector<DiagnosticRow> rows;
};

/// Runs trial 0 for the single entry of config.k_values and evaluates the
/// grid oracle along the trajectory. Requires bounded domains.
DiagnosticResult diagnose(const ExperimentConfig& config, double grid_step = 1e-3);

/// diagnostics.csv: surface,k,iter,u0[,u1,...],dist,dh_r_a,dh_a_s,zeta,lemma5_ok
void write_diagnostics_csv(const DiagnosticResult& result, std::ostream& out);
void write_diagnostics_csv(const DiagnosticResult& result, const std::string& out_dir);

}  // namespace kbeam
