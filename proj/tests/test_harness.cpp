#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "kbeam/harness.hpp"
#include "support/test_oracles.hpp"

using namespace kbeam;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.surface = "anti_saddle";
  cfg.k_values = {1, 2};
  cfg.trials = 6;
  cfg.iterations = 40;
  cfg.seed = 42;
  return cfg;
}

std::pair<std::string, std::string> csv_bytes(const ExperimentResult& result) {
  std::ostringstream trials, summary;
  write_csv(result, trials, summary);
  return {trials.str(), summary.str()};
}

}  // namespace

TEST_CASE("run_experiment validates its config up front") {
  ExperimentConfig cfg = small_config();
  cfg.surface = "not_a_surface";
  CHECK_THROWS_AS(run_experiment(cfg), std::out_of_range);

  cfg = small_config();
  cfg.trials = 0;
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);

  cfg = small_config();
  cfg.k_values = {2, 0};
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);

  cfg = small_config();
  cfg.surface = "unconstrained_quadratic";  // unbounded: needs an init box
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  cfg.init_box = BoxDomain::cube(1, -0.5, 0.5);
  CHECK_NOTHROW(run_experiment(cfg));
}

TEST_CASE("smallest run: one record row plus its summary row") {
  ExperimentConfig cfg = small_config();
  cfg.k_values = {1};
  cfg.trials = 1;
  cfg.iterations = 1;
  const ExperimentResult result = run_experiment(cfg);
  REQUIRE(result.records.size() == 1);
  REQUIRE(result.summary.size() == 1);
  CHECK(result.records[0].iter == 1);
  CHECK(result.summary[0].mean_dist == result.records[0].dist);
  CHECK(result.summary[0].std_dist == 0.0);

  const auto [trials_csv, summary_csv] = csv_bytes(result);
  CHECK(std::count(trials_csv.begin(), trials_csv.end(), '\n') == 2);  // header + one row
  CHECK(trials_csv.rfind("surface,k,trial,iter,u0,dist,phi_hat,stop_reason\n", 0) == 0);
  CHECK(summary_csv.rfind("surface,k,iter,mean_dist,std_dist\n", 0) == 0);
}

TEST_CASE("records are sorted and contiguous") {
  const ExperimentResult result = run_experiment(small_config());
  REQUIRE(result.records.size() == 2u * 6u * 40u);
  const TrialRecord* prev = nullptr;
  for (const TrialRecord& row : result.records) {
    if (prev) {
      CHECK(std::tie(prev->k, prev->trial, prev->iter) < std::tie(row.k, row.trial, row.iter));
      if (prev->k == row.k && prev->trial == row.trial) CHECK(row.iter == prev->iter + 1);
    }
    prev = &row;
  }
}

TEST_CASE("summary is recomputable from the records") {
  const ExperimentResult result = run_experiment(small_config());
  for (const SummaryRow& s : result.summary) {
    double sum = 0.0;
    int n = 0;
    for (const TrialRecord& row : result.records) {
      if (row.k == s.k && row.iter == s.iter) {
        sum += row.dist;
        ++n;
      }
    }
    REQUIRE(n > 0);
    const double mean = sum / n;
    double var = 0.0;
    for (const TrialRecord& row : result.records) {
      if (row.k == s.k && row.iter == s.iter) var += (row.dist - mean) * (row.dist - mean);
    }
    const double stddev = n > 1 ? std::sqrt(var / (n - 1)) : 0.0;
    CHECK(std::abs(s.mean_dist - mean) <= 1e-12);
    CHECK(std::abs(s.std_dist - stddev) <= 1e-12);
  }
}

TEST_CASE("identical configs produce byte-identical csv, for any worker count") {
  ExperimentConfig cfg = small_config();
  cfg.workers = 1;
  const auto [t1, s1] = csv_bytes(run_experiment(cfg));
  cfg.workers = 8;
  const auto [t2, s2] = csv_bytes(run_experiment(cfg));
  CHECK(t1 == t2);
  CHECK(s1 == s2);

  const auto [t3, s3] = csv_bytes(run_experiment(cfg));
  CHECK(t2 == t3);
  CHECK(s2 == s3);
}

TEST_CASE("adding k values never perturbs existing trials") {
  ExperimentConfig cfg = small_config();
  cfg.k_values = {2};
  const ExperimentResult narrow = run_experiment(cfg);
  cfg.k_values = {1, 2, 5};
  const ExperimentResult wide = run_experiment(cfg);

  std::vector<TrialRecord> wide_k2;
  for (const TrialRecord& row : wide.records) {
    if (row.k == 2) wide_k2.push_back(row);
  }
  REQUIRE(wide_k2.size() == narrow.records.size());
  for (std::size_t j = 0; j < wide_k2.size(); ++j) {
    CHECK(wide_k2[j].u == narrow.records[j].u);
    CHECK(wide_k2[j].dist == narrow.records[j].dist);
    CHECK(wide_k2[j].phi_hat == narrow.records[j].phi_hat);
  }
}

TEST_CASE("the K=1 column is exactly projected alternating gradient descent") {
  ExperimentConfig cfg;
  cfg.surface = "seesaw";
  cfg.k_values = {1};
  cfg.trials = 3;
  cfg.iterations = 60;
  cfg.seed = 11;
  const ExperimentResult result = run_experiment(cfg);
  const BenchmarkSurface s = get_surface(cfg.surface);

  for (int trial = 0; trial < cfg.trials; ++trial) {
    SplitMix64 rng(mix_seed(cfg.seed, 1, trial));
    const Vector u0 = sample_uniform(s.problem.domain_u, rng);
    const Vector v0 = sample_uniform(s.problem.domain_v, rng);
    const testing::AltGdResult ref =
        testing::alt_gd_reference(s.problem, u0, v0, cfg.rho0, cfg.eta0, cfg.iterations);
    for (const TrialRecord& row : result.records) {
      if (row.trial != trial) continue;
      CHECK(row.u == ref.u_path[row.iter - 1]);
    }
  }
}

TEST_CASE("write_csv surfaces io failures with path context") {
  const ExperimentResult result = run_experiment(small_config());
  CHECK_THROWS_AS(write_csv(result, "/proc/kbeam-nonexistent/out"), std::runtime_error);
}

TEST_CASE("diagnose") {
  ExperimentConfig cfg;
  cfg.surface = "anti_saddle";
  cfg.k_values = {2};
  cfg.trials = 1;
  cfg.iterations = 50;
  cfg.seed = 7;

  const DiagnosticResult diag = diagnose(cfg);
  REQUIRE(static_cast<int>(diag.rows.size()) == cfg.iterations);
  CHECK(diag.k == 2);
  CHECK(diag.lipschitz_l > 1.9);  // anti-saddle: |df/dv| reaches ~2 at the boundary

  for (const DiagnosticRow& row : diag.rows) {
    CHECK(row.dh_r_a >= 0.0);
    CHECK(row.dh_a_s >= 0.0);
    CHECK(row.zeta >= 0.0);
    const double delta = std::max(row.dh_r_a, row.dh_a_s);
    CHECK(row.lemma_ok == (delta < 0.5 * row.zeta / diag.lipschitz_l));
  }

  // Deterministic and consistent with the sweep's trial 0.
  const DiagnosticResult again = diagnose(cfg);
  std::ostringstream a, b;
  write_diagnostics_csv(diag, a);
  write_diagnostics_csv(again, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("surface,k,iter,u0,dist,dh_r_a,dh_a_s,zeta,lemma5_ok\n", 0) == 0);

  const ExperimentResult sweep = run_experiment(cfg);
  for (std::size_t j = 0; j < diag.rows.size(); ++j) {
    CHECK(diag.rows[j].u == sweep.records[j].u);
    CHECK(diag.rows[j].dist == sweep.records[j].dist);
  }

  SUBCASE("requires a single k and bounded domains") {
    ExperimentConfig bad = cfg;
    bad.k_values = {1, 2};
    CHECK_THROWS_AS(diagnose(bad), std::invalid_argument);
    bad = cfg;
    bad.surface = "unconstrained_quadratic";
    bad.init_box = BoxDomain::cube(1, -0.5, 0.5);
    CHECK_THROWS_AS(diagnose(bad), std::invalid_argument);
  }
}

TEST_CASE("diagnose tracks beam collapse on the saddle surface") {
  // On the saddle surface S(u) = {0}; the beam contracts toward 0, so
  // d_H(A, S) shrinks along the run.
  ExperimentConfig cfg;
  cfg.surface = "saddle";
  cfg.k_values = {1};
  cfg.trials = 1;
  cfg.iterations = 200;
  cfg.seed = 3;
  const DiagnosticResult diag = diagnose(cfg);
  CHECK(diag.rows.back().dh_a_s < diag.rows.front().dh_a_s);
  CHECK(diag.rows.back().dh_a_s <= 0.2);
}
