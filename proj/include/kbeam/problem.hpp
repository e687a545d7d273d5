#pragma once

#include <Eigen/Core>
#include <functional>
#include <utility>
#include <vector>

#include "kbeam/rng.hpp"

namespace kbeam {

using Vector = Eigen::VectorXd;

/// Axis-aligned box with per-coordinate bounds. Unbounded coordinates use
/// +/-infinity sentinels; projection on them is the identity.
struct BoxDomain {
  Vector lower;
  Vector upper;

  BoxDomain() = default;
  BoxDomain(Vector lo, Vector hi);

  /// [lo, hi]^dim.
  static BoxDomain cube(int dim, double lo, double hi);
  /// (-inf, +inf)^dim.
  static BoxDomain unbounded(int dim);

  int dim() const { return static_cast<int>(lower.size()); }
  bool bounded() const;
  bool contains(const Vector& x, double tol = 0.0) const;
};

/// A continuous minimax problem min_u max_v f(u, v) with analytic gradients
/// and box domains. All members are immutable after construction and the
/// callables must be safe for concurrent read-only invocation.
struct MinimaxProblem {
  using Objective = std::function<double(const Vector&, const Vector&)>;
  using Gradient = std::function<Vector(const Vector&, const Vector&)>;

  int dim_u = 0;
  int dim_v = 0;
  Objective f;
  Gradient grad_u;
  Gradient grad_v;
  BoxDomain domain_u;
  BoxDomain domain_v;
};

/// Per-coordinate clamp of x onto the box. Idempotent; identity inside.
Vector project(const Vector& x, const BoxDomain& box);

/// I.i.d. uniform sample over a bounded box; consumes dim() draws.
Vector sample_uniform(const BoxDomain& box, SplitMix64& rng);

struct GradientCheckReport {
  double max_rel_error = 0.0;
  int checked = 0;
  /// Points closer than h to a finite boundary are skipped, not failed.
  int skipped = 0;
};

/// Compares analytic gradients against central finite differences
/// (f(x + h e_j) - f(x - h e_j)) / 2h at the given (u, v) points.
/// Reported error is max over coordinates of |analytic - numeric| / max(1, |analytic|).
GradientCheckReport validate_gradients(const MinimaxProblem& p,
                                       const std::vector<std::pair<Vector, Vector>>& points,
                                       double h = 1e-5);

}  // namespace kbeam
