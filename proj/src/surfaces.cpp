#include "kbeam/surfaces.hpp"

#include <cmath>
#include <stdexcept>

namespace kbeam {

namespace {

constexpr double kPi = 3.14159265358979323846;

using ScalarFn = double (*)(double, double);

Vector vec1(double x) {
  Vector v(1);
  v[0] = x;
  return v;
}

std::pair<Vector, Vector> point2(double u, double v) { return {vec1(u), vec1(v)}; }

// Wraps scalar f(u, v) and its partials into a 1-D MinimaxProblem.
MinimaxProblem scalar_problem(ScalarFn f, ScalarFn fu, ScalarFn fv, const BoxDomain& box_u,
                              const BoxDomain& box_v) {
  MinimaxProblem p;
  p.dim_u = 1;
  p.dim_v = 1;
  p.f = [f](const Vector& u, const Vector& v) { return f(u[0], v[0]); };
  p.grad_u = [fu](const Vector& u, const Vector& v) { return vec1(fu(u[0], v[0])); };
  p.grad_v = [fv](const Vector& u, const Vector& v) { return vec1(fv(u[0], v[0])); };
  p.domain_u = box_u;
  p.domain_v = box_v;
  return p;
}

SolutionSet points_set(std::initializer_list<double> us) {
  SolutionSet s;
  for (double u : us) s.points.push_back(vec1(u));
  return s;
}

// f = e^{-10(u+0.5)e^{-(v+0.5)}} + e^{-10(0.5-u)e^{v-0.5}}  (Danskin's weapons model)
double weapons_f(double u, double v) {
  return std::exp(-10.0 * (u + 0.5) * std::exp(-(v + 0.5))) +
         std::exp(-10.0 * (0.5 - u) * std::exp(v - 0.5));
}
double weapons_fu(double u, double v) {
  const double e1 = std::exp(-(v + 0.5));
  const double e2 = std::exp(v - 0.5);
  return -10.0 * e1 * std::exp(-10.0 * (u + 0.5) * e1) +
         10.0 * e2 * std::exp(-10.0 * (0.5 - u) * e2);
}
double weapons_fv(double u, double v) {
  const double e1 = std::exp(-(v + 0.5));
  const double e2 = std::exp(v - 0.5);
  return 10.0 * (u + 0.5) * e1 * std::exp(-10.0 * (u + 0.5) * e1) -
         10.0 * (0.5 - u) * e2 * std::exp(-10.0 * (0.5 - u) * e2);
}

BenchmarkSurface make_saddle() {
  BenchmarkSurface s;
  s.name = "saddle";  // f = u^2 - v^2
  s.problem = scalar_problem(
      [](double u, double v) { return u * u - v * v; },
      [](double u, double) { return 2.0 * u; }, [](double, double v) { return -2.0 * v; },
      BoxDomain::cube(1, -0.5, 0.5), BoxDomain::cube(1, -0.5, 0.5));
  s.minimax_u_set = points_set({0.0});
  s.saddle_points = {point2(0.0, 0.0)};
  s.critical_points = {point2(0.0, 0.0)};
  s.phi_closed_form = [](const Vector& u) { return u[0] * u[0]; };
  s.maximizers_closed_form = [](const Vector&) { return std::vector<Vector>{vec1(0.0)}; };
  return s;
}

BenchmarkSurface make_rotated_saddle() {
  BenchmarkSurface s;
  s.name = "rotated_saddle";  // f = u^2 - v^2 + 2uv
  s.problem = scalar_problem(
      [](double u, double v) { return u * u - v * v + 2.0 * u * v; },
      [](double u, double v) { return 2.0 * u + 2.0 * v; },
      [](double u, double v) { return -2.0 * v + 2.0 * u; }, BoxDomain::cube(1, -0.5, 0.5),
      BoxDomain::cube(1, -0.5, 0.5));
  s.minimax_u_set = points_set({0.0});
  s.saddle_points = {point2(0.0, 0.0)};
  s.critical_points = {point2(0.0, 0.0)};
  // argmax_v is v = u (interior for |u| <= 0.5), hence phi = 2u^2.
  s.phi_closed_form = [](const Vector& u) { return 2.0 * u[0] * u[0]; };
  s.maximizers_closed_form = [](const Vector& u) { return std::vector<Vector>{vec1(u[0])}; };
  return s;
}

BenchmarkSurface make_seesaw() {
  BenchmarkSurface s;
  s.name = "seesaw";  // f = -v sin(pi u)
  s.problem = scalar_problem(
      [](double u, double v) { return -v * std::sin(kPi * u); },
      [](double u, double v) { return -v * kPi * std::cos(kPi * u); },
      [](double u, double) { return -std::sin(kPi * u); }, BoxDomain::cube(1, -0.5, 0.5),
      BoxDomain::cube(1, -0.5, 0.5));
  // Minimax pairs are {(0, v) : v in [-0.5, 0.5]}; the u-component set is {0}.
  s.minimax_u_set = points_set({0.0});
  s.saddle_points = {point2(0.0, 0.0)};
  s.critical_points = {point2(0.0, 0.0)};
  s.phi_closed_form = [](const Vector& u) { return 0.5 * std::abs(std::sin(kPi * u[0])); };
  // R(0) is the whole interval; no finite closed form is exposed.
  return s;
}

BenchmarkSurface make_monkey_saddle() {
  BenchmarkSurface s;
  s.name = "monkey_saddle";  // f = v^3 - 3 v u^2
  s.problem = scalar_problem(
      [](double u, double v) { return v * v * v - 3.0 * v * u * u; },
      [](double u, double v) { return -6.0 * u * v; },
      [](double u, double v) { return 3.0 * v * v - 3.0 * u * u; },
      BoxDomain::cube(1, -0.5, 0.5), BoxDomain::cube(1, -0.5, 0.5));
  s.minimax_u_set = points_set({-0.25, 0.25});
  s.critical_points = {point2(0.0, 0.0)};
  // Candidates for argmax_v on [-0.5, 0.5]: the interior local max v = -|u|
  // (value 2|u|^3) and the endpoint v = 0.5 (value 0.125 - 1.5 u^2); the
  // other endpoint never wins.
  s.phi_closed_form = [](const Vector& u) {
    const double a = std::abs(u[0]);
    return std::max(2.0 * a * a * a, 0.125 - 1.5 * u[0] * u[0]);
  };
  s.maximizers_closed_form = [](const Vector& u) {
    const double a = std::abs(u[0]);
    const double interior = 2.0 * a * a * a;
    const double endpoint = 0.125 - 1.5 * u[0] * u[0];
    std::vector<Vector> r;
    if (interior >= endpoint && a > 0.0) r.push_back(vec1(-a));
    if (endpoint >= interior) r.push_back(vec1(0.5));
    return r;
  };
  return s;
}

BenchmarkSurface make_anti_saddle() {
  BenchmarkSurface s;
  s.name = "anti_saddle";  // f = -u^2 + v^2 + 2uv
  s.problem = scalar_problem(
      [](double u, double v) { return -u * u + v * v + 2.0 * u * v; },
      [](double u, double v) { return -2.0 * u + 2.0 * v; },
      [](double u, double v) { return 2.0 * v + 2.0 * u; }, BoxDomain::cube(1, -0.5, 0.5),
      BoxDomain::cube(1, -0.5, 0.5));
  s.minimax_u_set = points_set({0.0});
  s.critical_points = {point2(0.0, 0.0)};
  s.phi_closed_form = [](const Vector& u) {
    return -u[0] * u[0] + 0.25 + std::abs(u[0]);
  };
  s.maximizers_closed_form = [](const Vector& u) {
    std::vector<Vector> r;
    if (u[0] >= 0.0) r.push_back(vec1(0.5));
    if (u[0] <= 0.0) r.push_back(vec1(-0.5));
    return r;
  };
  return s;
}

BenchmarkSurface make_weapons() {
  BenchmarkSurface s;
  s.name = "weapons";
  s.problem = scalar_problem(weapons_f, weapons_fu, weapons_fv, BoxDomain::cube(1, -0.5, 0.5),
                             BoxDomain::cube(1, -0.5, 0.5));
  s.minimax_u_set = points_set({0.0});
  s.critical_points = {point2(0.0, 0.0)};
  // The maximizing endpoint sits opposite the sign of u.
  s.maximizers_closed_form = [](const Vector& u) {
    std::vector<Vector> r;
    if (u[0] <= 0.0) r.push_back(vec1(0.5));
    if (u[0] >= 0.0) r.push_back(vec1(-0.5));
    return r;
  };
  return s;
}

BenchmarkSurface make_unconstrained_quadratic() {
  BenchmarkSurface s;
  s.name = "unconstrained_quadratic";  // f = -0.5 u^2 + 2uv - v^2 on R^2
  s.problem = scalar_problem(
      [](double u, double v) { return -0.5 * u * u + 2.0 * u * v - v * v; },
      [](double u, double v) { return -u + 2.0 * v; },
      [](double u, double v) { return 2.0 * u - 2.0 * v; }, BoxDomain::unbounded(1),
      BoxDomain::unbounded(1));
  s.minimax_u_set = points_set({0.0});
  s.critical_points = {point2(0.0, 0.0)};
  s.phi_closed_form = [](const Vector& u) { return 0.5 * u[0] * u[0]; };
  s.maximizers_closed_form = [](const Vector& u) { return std::vector<Vector>{vec1(u[0])}; };
  return s;
}

}  // namespace

const std::vector<std::string>& surface_names() {
  static const std::vector<std::string> names = {
      "saddle",      "rotated_saddle", "seesaw",
      "monkey_saddle", "anti_saddle",  "weapons",
      "unconstrained_quadratic"};
  return names;
}

BenchmarkSurface get_surface(const std::string& name) {
  if (name == "saddle") return make_saddle();
  if (name == "rotated_saddle") return make_rotated_saddle();
  if (name == "seesaw") return make_seesaw();
  if (name == "monkey_saddle") return make_monkey_saddle();
  if (name == "anti_saddle") return make_anti_saddle();
  if (name == "weapons") return make_weapons();
  if (name == "unconstrained_quadratic") return make_unconstrained_quadratic();
  throw std::out_of_range("get_surface: unknown surface '" + name + "'");
}

double distance_to_solution(const Vector& u, const SolutionSet& s) {
  if (s.empty()) throw std::invalid_argument("distance_to_solution: empty solution set");
  double best = std::numeric_limits<double>::infinity();
  for (const Vector& p : s.points) {
    if (p.size() != u.size()) {
      throw std::invalid_argument("distance_to_solution: dimension mismatch");
    }
    best = std::min(best, (u - p).norm());
  }
  for (const SolutionSet::Interval& box : s.intervals) {
    if (box.lower.size() != u.size()) {
      throw std::invalid_argument("distance_to_solution: dimension mismatch");
    }
    const Vector nearest = u.cwiseMax(box.lower).cwiseMin(box.upper);
    best = std::min(best, (u - nearest).norm());
  }
  return best;
}

}  // namespace kbeam
