#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kbeam/problem.hpp"

namespace kbeam {

/// Ground-truth minimax u-components: a finite point list, axis-aligned
/// intervals, or both.
struct SolutionSet {
  struct Interval {
    Vector lower;
    Vector upper;
  };

  std::vector<Vector> points;
  std::vector<Interval> intervals;

  bool empty() const { return points.empty() && intervals.empty(); }
};

/// min over the set of ||u - s||; intervals contribute the distance to their
/// nearest point (a per-coordinate clamp).
double distance_to_solution(const Vector& u, const SolutionSet& s);

/// One analytic benchmark problem with its known solution structure.
struct BenchmarkSurface {
  std::string name;
  MinimaxProblem problem;
  SolutionSet minimax_u_set;
  std::vector<std::pair<Vector, Vector>> saddle_points;
  std::vector<std::pair<Vector, Vector>> critical_points;
  /// phi(u) = max_v f(u, v) where available in closed form; null otherwise.
  std::function<double(const Vector&)> phi_closed_form;
  /// R(u) = argmax_v f(u, v) where finite and known; null otherwise.
  std::function<std::vector<Vector>(const Vector&)> maximizers_closed_form;
};

/// Catalog names, in order: saddle, rotated_saddle, seesaw, monkey_saddle,
/// anti_saddle, weapons, unconstrained_quadratic.
const std::vector<std::string>& surface_names();

/// Throws std::out_of_range for unknown names.
BenchmarkSurface get_surface(const std::string& name);

}  // namespace kbeam
