#pragma once

#include <vector>

#include "kbeam/problem.hpp"

namespace kbeam {

/// Uniform 1-D grid including both endpoints exactly. The requested step is
/// normalized to (upper - lower) / round((upper - lower) / h) so the
/// endpoints land on grid points.
struct Grid1D {
  double lower = 0.0;
  double upper = 0.0;
  double step = 0.0;
  int count = 1;

  Grid1D(double lo, double hi, double h);

  double point(int j) const;
  std::vector<double> points() const;
};

/// Finite-sample estimates (lower bounds) of the smoothness constants used in
/// the analysis: l for f in v, r for grad_u f in v, B = max ||u||.
struct LipschitzEstimates {
  double l = 0.0;
  double r = 0.0;
  double B = 0.0;
};

/// max over the grid of f(u, .). Error vs the true phi(u) is at most l*h/2
/// for f l-Lipschitz in v.
double phi_grid(const MinimaxProblem& p, const Vector& u, const Grid1D& vgrid);

/// Grid points whose value is within eps of the grid maximum.
std::vector<Vector> r_eps_grid(const MinimaxProblem& p, const Vector& u, const Grid1D& vgrid,
                               double eps);

/// Grid points whose value is >= both neighbors (one neighbor at the ends);
/// plateau ties are all included.
std::vector<Vector> local_maxima_grid(const MinimaxProblem& p, const Vector& u,
                                      const Grid1D& vgrid);

/// max over `from` of the min distance into `to`. Asymmetric.
double hausdorff_one_sided(const std::vector<Vector>& from, const std::vector<Vector>& to);

/// Gap between the global maximum value and the best non-global local
/// maximum of f(u, .) on the grid; +infinity when every local maximum is
/// global.
double zeta_gap(const MinimaxProblem& p, const Vector& u, const Grid1D& vgrid);

LipschitzEstimates estimate_lipschitz(const MinimaxProblem& p, const Grid1D& ugrid,
                                      const Grid1D& vgrid);

struct GridMinimaxResult {
  Vector u_hat;
  double phi_at_u_hat = 0.0;
};

/// Fixed-grid discrete minimax baseline: argmin over the u-grid of the max
/// over the v-grid (ties -> smallest u).
GridMinimaxResult grid_minimax(const MinimaxProblem& p, const Grid1D& ugrid, const Grid1D& vgrid);

}  // namespace kbeam
