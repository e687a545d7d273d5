#include "kbeam/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kbeam {

namespace {

Vector vec1(double x) {
  Vector v(1);
  v[0] = x;
  return v;
}

void require_1d_v(const MinimaxProblem& p, const char* what) {
  if (p.dim_v != 1) {
    throw std::invalid_argument(std::string(what) + ": needs a 1-D v-space");
  }
}

std::vector<double> f_row(const MinimaxProblem& p, const Vector& u, const Grid1D& vgrid) {
  std::vector<double> values(vgrid.count);
  for (int j = 0; j < vgrid.count; ++j) {
    values[j] = p.f(u, vec1(vgrid.point(j)));
  }
  return values;
}

// Indices of grid-local maxima: value >= both neighbors, one-sided at the
// ends, plateaus fully included.
std::vector<int> local_max_indices(const std::vector<double>& values) {
  const int m = static_cast<int>(values.size());
  std::vector<int> idx;
  for (int j = 0; j < m; ++j) {
    const bool left_ok = j == 0 || values[j] >= values[j - 1];
    const bool right_ok = j == m - 1 || values[j] >= values[j + 1];
    if (left_ok && right_ok) idx.push_back(j);
  }
  return idx;
}

}  // namespace

Grid1D::Grid1D(double lo, double hi, double h) : lower(lo), upper(hi) {
  if (!(h > 0.0)) throw std::invalid_argument("Grid1D: step must be positive");
  if (!(hi >= lo)) throw std::invalid_argument("Grid1D: upper must be >= lower");
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("Grid1D: bounds must be finite");
  }
  if (hi == lo) {
    count = 1;
    step = 0.0;
    return;
  }
  const long long m = std::max(1LL, std::llround((hi - lo) / h));
  count = static_cast<int>(m) + 1;
  step = (hi - lo) / static_cast<double>(m);
}

double Grid1D::point(int j) const {
  if (count == 1) return lower;
  // lerp keeps both endpoints exact and symmetric grids symmetric.
  const double t = static_cast<double>(j) / static_cast<double>(count - 1);
  return lower + (upper - lower) * t;
}

std::vector<double> Grid1D::points() const {
  std::vector<double> ps(count);
  for (int j = 0; j < count; ++j) ps[j] = point(j);
  return ps;
}

double phi_grid(const MinimaxProblem& p, const Vector& u, const Grid1D& vgrid) {
  require_1d_v(p, "phi_grid");
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < vgrid.count; ++j) {
    best = std::max(best, p.f(u, vec1(vgrid.point(j))));
  }
  return best;
}

std::vector<Vector> r_eps_grid(const MinimaxProblem& p, const Vector& u, const Grid1D& vgrid,
                               double eps) {
  require_1d_v(p, "r_eps_grid");
  if (eps < 0.0) throw std::invalid_argument("r_eps_grid: eps must be nonnegative");
  const std::vector<double> values = f_row(p, u, vgrid);
  double phi = -std::numeric_limits<double>::infinity();
  for (double fv : values) phi = std::max(phi, fv);
  std::vector<Vector> result;
  for (int j = 0; j < vgrid.count; ++j) {
    if (phi - values[j] <= eps) result.push_back(vec1(vgrid.point(j)));
  }
  return result;
}

std::vector<Vector> local_maxima_grid(const MinimaxProblem& p, const Vector& u,
                                      const Grid1D& vgrid) {
  require_1d_v(p, "local_maxima_grid");
  const std::vector<double> values = f_row(p, u, vgrid);
  std::vector<Vector> result;
  for (int j : local_max_indices(values)) result.push_back(vec1(vgrid.point(j)));
  return result;
}

double hausdorff_one_sided(const std::vector<Vector>& from, const std::vector<Vector>& to) {
  if (from.empty() || to.empty()) {
    throw std::invalid_argument("hausdorff_one_sided: empty set");
  }
  double worst = 0.0;
  for (const Vector& a : from) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const Vector& b : to) {
      nearest = std::min(nearest, (a - b).norm());
    }
    worst = std::max(worst, nearest);
  }
  return worst;
}

double zeta_gap(const MinimaxProblem& p, const Vector& u, const Grid1D& vgrid) {
  require_1d_v(p, "zeta_gap");
  const std::vector<double> values = f_row(p, u, vgrid);
  double phi = -std::numeric_limits<double>::infinity();
  for (double fv : values) phi = std::max(phi, fv);

  double best_nonglobal = -std::numeric_limits<double>::infinity();
  for (int j : local_max_indices(values)) {
    if (values[j] != phi) best_nonglobal = std::max(best_nonglobal, values[j]);
  }
  if (!std::isfinite(best_nonglobal)) {
    return std::numeric_limits<double>::infinity();
  }
  return phi - best_nonglobal;
}

LipschitzEstimates estimate_lipschitz(const MinimaxProblem& p, const Grid1D& ugrid,
                                      const Grid1D& vgrid) {
  require_1d_v(p, "estimate_lipschitz");
  if (p.dim_u != 1) throw std::invalid_argument("estimate_lipschitz: needs a 1-D u-space");

  LipschitzEstimates est;
  for (int i = 0; i < ugrid.count; ++i) {
    const Vector u = vec1(ugrid.point(i));
    est.B = std::max(est.B, std::abs(u[0]));
    double prev_f = p.f(u, vec1(vgrid.point(0)));
    double prev_g = p.grad_u(u, vec1(vgrid.point(0)))[0];
    for (int j = 1; j < vgrid.count; ++j) {
      const double dv = vgrid.point(j) - vgrid.point(j - 1);
      const double cur_f = p.f(u, vec1(vgrid.point(j)));
      const double cur_g = p.grad_u(u, vec1(vgrid.point(j)))[0];
      est.l = std::max(est.l, std::abs(cur_f - prev_f) / dv);
      est.r = std::max(est.r, std::abs(cur_g - prev_g) / dv);
      prev_f = cur_f;
      prev_g = cur_g;
    }
  }
  return est;
}

GridMinimaxResult grid_minimax(const MinimaxProblem& p, const Grid1D& ugrid, const Grid1D& vgrid) {
  require_1d_v(p, "grid_minimax");
  if (p.dim_u != 1) throw std::invalid_argument("grid_minimax: needs a 1-D u-space");

  GridMinimaxResult result;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < ugrid.count; ++i) {
    const Vector u = vec1(ugrid.point(i));
    const double phi = phi_grid(p, u, vgrid);
    if (phi < best) {  // strict: ties keep the smallest u
      best = phi;
      result.u_hat = u;
    }
  }
  result.phi_at_u_hat = best;
  return result;
}

}  // namespace kbeam
