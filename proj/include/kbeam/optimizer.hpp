#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "kbeam/hull.hpp"
#include "kbeam/problem.hpp"
#include "kbeam/rng.hpp"

namespace kbeam {

/// The ordered candidate set A = (v^1, ..., v^K) tracked by the optimizer.
struct Beam {
  std::vector<Vector> candidates;

  Beam() = default;
  explicit Beam(std::vector<Vector> vs) : candidates(std::move(vs)) {}
  int size() const { return static_cast<int>(candidates.size()); }
};

/// Step-size and approximation schedules, indexed from i = 1.
struct Schedule {
  std::function<double(int)> rho;      // min-step size
  std::function<double(int)> eta;      // max-step size
  std::function<double(int)> epsilon;  // approximation level

  /// rho0/i, eta0/i, epsilon identically zero.
  static Schedule harmonic(double rho0 = 0.1, double eta0 = 0.1);
};

/// Output of one descent-direction computation.
struct DescentResult {
  Vector direction;                   // g; zero when stationary fired
  std::vector<int> eps_argmax_indices;  // beam indices of R^eps_A(u), ascending
  std::vector<Vector> gradients;      // z_j = grad_u f(u, v^{k_j})
  bool stationary = false;
};

enum class StopReason { max_iterations, stationary_point };

struct RunConfig {
  int K = 1;
  int N = 1;
  Schedule schedule = Schedule::harmonic();
  double eps_tol_stationarity = 1e-9;
  /// Check the stopping criterion whenever i % check_every == 0; 0 disables it.
  int check_every = 0;
  std::uint64_t seed = 0;
  /// When absent, sampled uniformly from the (bounded) domain.
  std::optional<Vector> u0;
  std::optional<Beam> beam0;
};

struct RunState {
  int iteration = 0;  // last completed iteration
  Vector u;
  Beam beam;
  double best_phi_hat = std::numeric_limits<double>::infinity();
  StopReason stop_reason = StopReason::max_iterations;
};

/// Called once per completed iteration with (i, u_i, A_i, phi_{A_i}(u_i)).
/// Exceptions thrown by the observer abort the run and propagate.
using Observer = std::function<void(int, const Vector&, const Beam&, double)>;

/// One descent-direction query at (u, A):
/// k_max = argmax_k f(u, v^k) (ties -> lowest index),
/// R^eps_A = {v^k : f(u, v^{k_max}) - f(u, v^k) <= eps}, z_j = grad_u f there.
/// With check_stationarity and 0 in co{z_j}, reports stationary with a zero
/// direction; otherwise g = -z_1 for a singleton R^eps_A and g = -z for a
/// random z in co{z_j} (consuming |R^eps_A| rng draws) when it is not.
DescentResult descent_direction(const MinimaxProblem& p, const Vector& u, const Beam& beam,
                                double eps, bool check_stationarity, SplitMix64& rng,
                                double stationarity_tol = 1e-9);

/// One projected gradient-ascent step per candidate, all against the same u:
/// v^k <- project(v^k + eta * grad_v f(u, v^k), domain_v). Candidates never
/// interact; order is preserved.
Beam max_step(const MinimaxProblem& p, const Vector& u, const Beam& beam, double eta);

/// K-beam epsilon-subgradient descent.
///
/// Initializes u_0 and A_0 (given or sampled; u_0 first, then the K
/// candidates), then for i = 1..N:
///   min step  u_i = project(u_{i-1} + rho_i * g(u_{i-1}, A_{i-1}, eps_i)),
///   max step  A_i = max_step(u_i, A_{i-1}, eta_i).
/// Stops early with StopReason::stationary_point if the optional check fires;
/// the fired iteration is not completed and not observed.
/// With K = 1, eps_i == 0 and the check disabled, the iterates reproduce
/// projected alternating gradient descent bit for bit.
RunState run(const MinimaxProblem& p, const RunConfig& config, const Observer& observer = {});

struct StationarityResult {
  bool stationary = false;
  double certificate_norm = 0.0;
};

/// Forms R^eps over candidate_vs by f-value gap, gathers grad_u f there and
/// returns the min-norm-point norm with the verdict ||.|| <= tol.
StationarityResult epsilon_stationarity_check(const MinimaxProblem& p, const Vector& u,
                                              const std::vector<Vector>& candidate_vs,
                                              double eps, double tol = 1e-9);

}  // namespace kbeam
