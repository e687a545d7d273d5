#include "kbeam/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kbeam {

namespace {

// Discrete maximum phi_A(u) over the beam; argmax ties go to the lowest index.
std::pair<double, int> discrete_max(const MinimaxProblem& p, const Vector& u, const Beam& beam,
                                    std::vector<double>* values = nullptr) {
  double best = -std::numeric_limits<double>::infinity();
  int arg = 0;
  for (int k = 0; k < beam.size(); ++k) {
    const double fk = p.f(u, beam.candidates[k]);
    if (values) values->push_back(fk);
    if (fk > best) {
      best = fk;
      arg = k;
    }
  }
  return {best, arg};
}

double checked_step(const std::function<double(int)>& fn, int i, const char* name) {
  const double value = fn ? fn(i) : 0.0;
  if (!(value >= 0.0)) {
    throw std::invalid_argument(std::string("run: schedule ") + name + "(" + std::to_string(i) +
                                ") must be nonnegative");
  }
  return value;
}

}  // namespace

Schedule Schedule::harmonic(double rho0, double eta0) {
  Schedule s;
  s.rho = [rho0](int i) { return rho0 / i; };
  s.eta = [eta0](int i) { return eta0 / i; };
  s.epsilon = [](int) { return 0.0; };
  return s;
}

DescentResult descent_direction(const MinimaxProblem& p, const Vector& u, const Beam& beam,
                                double eps, bool check_stationarity, SplitMix64& rng,
                                double stationarity_tol) {
  if (beam.size() < 1) throw std::invalid_argument("descent_direction: empty beam");
  if (eps < 0.0) throw std::invalid_argument("descent_direction: eps must be nonnegative");

  std::vector<double> values;
  values.reserve(beam.size());
  const auto [f_max, k_max] = discrete_max(p, u, beam, &values);
  (void)k_max;

  DescentResult result;
  for (int k = 0; k < beam.size(); ++k) {
    if (f_max - values[k] <= eps) {
      result.eps_argmax_indices.push_back(k);
      result.gradients.push_back(p.grad_u(u, beam.candidates[k]));
    }
  }

  if (check_stationarity && contains_origin(result.gradients, stationarity_tol)) {
    result.stationary = true;
    result.direction = Vector::Zero(p.dim_u);
    return result;
  }

  if (result.gradients.size() == 1) {
    result.direction = -result.gradients.front();
  } else {
    result.direction = -sample_convex_combination(result.gradients, rng);
  }
  return result;
}

Beam max_step(const MinimaxProblem& p, const Vector& u, const Beam& beam, double eta) {
  if (eta < 0.0) throw std::invalid_argument("max_step: eta must be nonnegative");
  Beam next;
  next.candidates.reserve(beam.size());
  for (const Vector& v : beam.candidates) {
    next.candidates.push_back(project(v + eta * p.grad_v(u, v), p.domain_v));
  }
  return next;
}

RunState run(const MinimaxProblem& p, const RunConfig& config, const Observer& observer) {
  if (config.K < 1) throw std::invalid_argument("run: K must be >= 1");
  if (config.N < 1) throw std::invalid_argument("run: N must be >= 1");
  if (config.check_every < 0) throw std::invalid_argument("run: check_every must be >= 0");

  SplitMix64 rng(config.seed);

  RunState state;
  if (config.u0) {
    if (static_cast<int>(config.u0->size()) != p.dim_u) {
      throw std::invalid_argument("run: u0 dimension mismatch");
    }
    state.u = *config.u0;
  } else {
    state.u = sample_uniform(p.domain_u, rng);
  }

  if (config.beam0) {
    if (config.beam0->size() != config.K) {
      throw std::invalid_argument("run: beam0 must hold exactly K candidates");
    }
    for (const Vector& v : config.beam0->candidates) {
      if (static_cast<int>(v.size()) != p.dim_v) {
        throw std::invalid_argument("run: beam0 dimension mismatch");
      }
    }
    state.beam = *config.beam0;
  } else {
    state.beam.candidates.reserve(config.K);
    for (int k = 0; k < config.K; ++k) {
      state.beam.candidates.push_back(sample_uniform(p.domain_v, rng));
    }
  }

  for (int i = 1; i <= config.N; ++i) {
    const double rho = checked_step(config.schedule.rho, i, "rho");
    const double eta = checked_step(config.schedule.eta, i, "eta");
    const double eps = checked_step(config.schedule.epsilon, i, "epsilon");

    const bool check = config.check_every > 0 && i % config.check_every == 0;
    const DescentResult dr =
        descent_direction(p, state.u, state.beam, eps, check, rng, config.eps_tol_stationarity);
    if (dr.stationary) {
      // Iteration i never completes; state holds iteration i-1.
      state.stop_reason = StopReason::stationary_point;
      return state;
    }

    state.u = project(state.u + rho * dr.direction, p.domain_u);
    state.beam = max_step(p, state.u, state.beam, eta);
    state.iteration = i;

    const double phi_hat = discrete_max(p, state.u, state.beam).first;
    state.best_phi_hat = std::min(state.best_phi_hat, phi_hat);
    if (observer) observer(i, state.u, state.beam, phi_hat);
  }
  state.stop_reason = StopReason::max_iterations;
  return state;
}

StationarityResult epsilon_stationarity_check(const MinimaxProblem& p, const Vector& u,
                                              const std::vector<Vector>& candidate_vs,
                                              double eps, double tol) {
  if (candidate_vs.empty()) {
    throw std::invalid_argument("epsilon_stationarity_check: no candidates");
  }
  if (eps < 0.0 || tol < 0.0) {
    throw std::invalid_argument("epsilon_stationarity_check: eps and tol must be nonnegative");
  }

  double f_max = -std::numeric_limits<double>::infinity();
  std::vector<double> values;
  values.reserve(candidate_vs.size());
  for (const Vector& v : candidate_vs) {
    values.push_back(p.f(u, v));
    f_max = std::max(f_max, values.back());
  }

  std::vector<Vector> gradients;
  for (std::size_t k = 0; k < candidate_vs.size(); ++k) {
    if (f_max - values[k] <= eps) gradients.push_back(p.grad_u(u, candidate_vs[k]));
  }

  StationarityResult result;
  // Solve tighter than the verdict tolerance so the reported norm is
  // meaningful on its own.
  const double solve_tol = std::clamp(tol, 1e-15, 1e-12);
  result.certificate_norm = min_norm_point(gradients, solve_tol).point.norm();
  result.stationary = result.certificate_norm <= tol;
  return result;
}

}  // namespace kbeam
