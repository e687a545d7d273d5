#include "kbeam/problem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kbeam {

namespace {

void require_dim(const Vector& x, int dim, const char* what) {
  if (static_cast<int>(x.size()) != dim) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(x.size()) + " vs " + std::to_string(dim) + ")");
  }
}

}  // namespace

BoxDomain::BoxDomain(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size()) {
    throw std::invalid_argument("BoxDomain: lower/upper dimension mismatch");
  }
  for (int j = 0; j < lower.size(); ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j]) {
      throw std::invalid_argument("BoxDomain: requires lower[j] <= upper[j]");
    }
  }
}

BoxDomain BoxDomain::cube(int dim, double lo, double hi) {
  return BoxDomain(Vector::Constant(dim, lo), Vector::Constant(dim, hi));
}

BoxDomain BoxDomain::unbounded(int dim) {
  const double inf = std::numeric_limits<double>::infinity();
  return BoxDomain(Vector::Constant(dim, -inf), Vector::Constant(dim, inf));
}

bool BoxDomain::bounded() const {
  for (int j = 0; j < lower.size(); ++j) {
    if (!std::isfinite(lower[j]) || !std::isfinite(upper[j])) return false;
  }
  return true;
}

bool BoxDomain::contains(const Vector& x, double tol) const {
  if (x.size() != lower.size()) return false;
  for (int j = 0; j < x.size(); ++j) {
    if (x[j] < lower[j] - tol || x[j] > upper[j] + tol) return false;
  }
  return true;
}

Vector project(const Vector& x, const BoxDomain& box) {
  require_dim(x, box.dim(), "project");
  return x.cwiseMax(box.lower).cwiseMin(box.upper);
}

Vector sample_uniform(const BoxDomain& box, SplitMix64& rng) {
  if (!box.bounded()) {
    throw std::invalid_argument("sample_uniform: box has an unbounded coordinate");
  }
  Vector x(box.dim());
  for (int j = 0; j < box.dim(); ++j) {
    x[j] = rng.uniform(box.lower[j], box.upper[j]);
  }
  return x;
}

GradientCheckReport validate_gradients(const MinimaxProblem& p,
                                       const std::vector<std::pair<Vector, Vector>>& points,
                                       double h) {
  if (h <= 0.0) throw std::invalid_argument("validate_gradients: h must be positive");

  GradientCheckReport report;

  const auto interior = [h](const Vector& x, const BoxDomain& box) {
    for (int j = 0; j < x.size(); ++j) {
      if (x[j] - box.lower[j] <= h || box.upper[j] - x[j] <= h) return false;
    }
    return true;
  };

  for (const auto& [u, v] : points) {
    require_dim(u, p.dim_u, "validate_gradients");
    require_dim(v, p.dim_v, "validate_gradients");
    if (!interior(u, p.domain_u) || !interior(v, p.domain_v)) {
      ++report.skipped;
      continue;
    }

    const Vector gu = p.grad_u(u, v);
    for (int j = 0; j < p.dim_u; ++j) {
      Vector up = u, um = u;
      up[j] += h;
      um[j] -= h;
      const double numeric = (p.f(up, v) - p.f(um, v)) / (2.0 * h);
      const double err = std::abs(gu[j] - numeric) / std::max(1.0, std::abs(gu[j]));
      report.max_rel_error = std::max(report.max_rel_error, err);
    }

    const Vector gv = p.grad_v(u, v);
    for (int j = 0; j < p.dim_v; ++j) {
      Vector vp = v, vm = v;
      vp[j] += h;
      vm[j] -= h;
      const double numeric = (p.f(u, vp) - p.f(u, vm)) / (2.0 * h);
      const double err = std::abs(gv[j] - numeric) / std::max(1.0, std::abs(gv[j]));
      report.max_rel_error = std::max(report.max_rel_error, err);
    }
    ++report.checked;
  }
  return report;
}

}  // namespace kbeam
