#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "kbeam/harness.hpp"
#include "kbeam/hull.hpp"
#include "kbeam/optimizer.hpp"
#include "kbeam/oracle.hpp"
#include "kbeam/problem.hpp"
#include "kbeam/surfaces.hpp"

namespace py = pybind11;
using namespace kbeam;

namespace {

MinimaxProblem make_problem(int dim_u, int dim_v, MinimaxProblem::Objective f,
                            MinimaxProblem::Gradient grad_u, MinimaxProblem::Gradient grad_v,
                            const Vector& lower_u, const Vector& upper_u, const Vector& lower_v,
                            const Vector& upper_v) {
  MinimaxProblem p;
  p.dim_u = dim_u;
  p.dim_v = dim_v;
  p.f = std::move(f);
  p.grad_u = std::move(grad_u);
  p.grad_v = std::move(grad_v);
  p.domain_u = BoxDomain(lower_u, upper_u);
  p.domain_v = BoxDomain(lower_v, upper_v);
  return p;
}

RunConfig make_run_config(int K, int N, double rho0, double eta0,
                          const std::function<double(int)>& epsilon, double eps_tol_stationarity,
                          int check_every, std::uint64_t seed, const std::optional<Vector>& u0,
                          const std::optional<std::vector<Vector>>& beam0) {
  RunConfig cfg;
  cfg.K = K;
  cfg.N = N;
  cfg.schedule = Schedule::harmonic(rho0, eta0);
  if (epsilon) cfg.schedule.epsilon = epsilon;
  cfg.eps_tol_stationarity = eps_tol_stationarity;
  cfg.check_every = check_every;
  cfg.seed = seed;
  if (u0) cfg.u0 = *u0;
  if (beam0) cfg.beam0 = Beam{*beam0};
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_kbeam, m) {
  m.doc() = "K-beam epsilon-subgradient descent for continuous minimax problems";

  py::class_<BoxDomain>(m, "BoxDomain")
      .def(py::init<Vector, Vector>(), py::arg("lower"), py::arg("upper"))
      .def_static("cube", &BoxDomain::cube, py::arg("dim"), py::arg("lo"), py::arg("hi"))
      .def_static("unbounded", &BoxDomain::unbounded, py::arg("dim"))
      .def_readonly("lower", &BoxDomain::lower)
      .def_readonly("upper", &BoxDomain::upper)
      .def("contains", &BoxDomain::contains, py::arg("x"), py::arg("tol") = 0.0)
      .def("bounded", &BoxDomain::bounded);

  py::class_<MinimaxProblem>(m, "MinimaxProblem")
      .def(py::init(&make_problem), py::arg("dim_u"), py::arg("dim_v"), py::arg("f"),
           py::arg("grad_u"), py::arg("grad_v"), py::arg("lower_u"), py::arg("upper_u"),
           py::arg("lower_v"), py::arg("upper_v"))
      .def_readonly("dim_u", &MinimaxProblem::dim_u)
      .def_readonly("dim_v", &MinimaxProblem::dim_v)
      .def("f", [](const MinimaxProblem& p, const Vector& u, const Vector& v) { return p.f(u, v); })
      .def("grad_u",
           [](const MinimaxProblem& p, const Vector& u, const Vector& v) { return p.grad_u(u, v); })
      .def("grad_v",
           [](const MinimaxProblem& p, const Vector& u, const Vector& v) { return p.grad_v(u, v); })
      .def_readonly("domain_u", &MinimaxProblem::domain_u)
      .def_readonly("domain_v", &MinimaxProblem::domain_v);

  m.def("project", &project, py::arg("x"), py::arg("box"));

  py::class_<GradientCheckReport>(m, "GradientCheckReport")
      .def_readonly("max_rel_error", &GradientCheckReport::max_rel_error)
      .def_readonly("checked", &GradientCheckReport::checked)
      .def_readonly("skipped", &GradientCheckReport::skipped);

  m.def("validate_gradients", &validate_gradients, py::arg("problem"), py::arg("points"),
        py::arg("h") = 1e-5);

  py::class_<HullPoint>(m, "HullPoint")
      .def_readonly("point", &HullPoint::point)
      .def_readonly("coefficients", &HullPoint::coefficients);

  m.def("min_norm_point", &min_norm_point, py::arg("vectors"), py::arg("tol") = 1e-9);
  m.def("contains_origin", &contains_origin, py::arg("vectors"), py::arg("tol") = 1e-9);

  py::class_<SolutionSet>(m, "SolutionSet")
      .def_readonly("points", &SolutionSet::points);

  py::class_<BenchmarkSurface>(m, "BenchmarkSurface")
      .def_readonly("name", &BenchmarkSurface::name)
      .def_readonly("problem", &BenchmarkSurface::problem)
      .def_readonly("minimax_u_set", &BenchmarkSurface::minimax_u_set)
      .def_readonly("saddle_points", &BenchmarkSurface::saddle_points)
      .def_readonly("critical_points", &BenchmarkSurface::critical_points)
      .def("phi", [](const BenchmarkSurface& s, const Vector& u) -> std::optional<double> {
        if (!s.phi_closed_form) return std::nullopt;
        return s.phi_closed_form(u);
      })
      .def("maximizers",
           [](const BenchmarkSurface& s, const Vector& u) -> std::optional<std::vector<Vector>> {
             if (!s.maximizers_closed_form) return std::nullopt;
             return s.maximizers_closed_form(u);
           });

  m.def("surface_names", []() { return surface_names(); });
  m.def("get_surface", &get_surface, py::arg("name"));
  m.def("distance_to_solution", &distance_to_solution, py::arg("u"), py::arg("solution_set"));

  py::enum_<StopReason>(m, "StopReason")
      .value("max_iterations", StopReason::max_iterations)
      .value("stationary_point", StopReason::stationary_point);

  py::class_<RunState>(m, "RunState")
      .def_readonly("iteration", &RunState::iteration)
      .def_readonly("u", &RunState::u)
      .def_property_readonly("beam",
                             [](const RunState& s) { return s.beam.candidates; })
      .def_readonly("best_phi_hat", &RunState::best_phi_hat)
      .def_readonly("stop_reason", &RunState::stop_reason);

  m.def(
      "run",
      [](const MinimaxProblem& p, int K, int N, double rho0, double eta0,
         const std::function<double(int)>& epsilon, double eps_tol_stationarity, int check_every,
         std::uint64_t seed, const std::optional<Vector>& u0,
         const std::optional<std::vector<Vector>>& beam0, const py::object& observer) {
        const RunConfig cfg = make_run_config(K, N, rho0, eta0, epsilon, eps_tol_stationarity,
                                              check_every, seed, u0, beam0);
        Observer native;
        if (!observer.is_none()) {
          native = [&observer](int i, const Vector& u, const Beam& beam, double phi) {
            observer(i, u, beam.candidates, phi);
          };
        }
        return run(p, cfg, native);
      },
      py::arg("problem"), py::arg("K") = 1, py::arg("N") = 1, py::arg("rho0") = 0.1,
      py::arg("eta0") = 0.1, py::arg("epsilon") = nullptr,
      py::arg("eps_tol_stationarity") = 1e-9, py::arg("check_every") = 0, py::arg("seed") = 0,
      py::arg("u0") = std::nullopt, py::arg("beam0") = std::nullopt,
      py::arg("observer") = py::none());

  py::class_<StationarityResult>(m, "StationarityResult")
      .def_readonly("stationary", &StationarityResult::stationary)
      .def_readonly("certificate_norm", &StationarityResult::certificate_norm);

  m.def("epsilon_stationarity_check", &epsilon_stationarity_check, py::arg("problem"),
        py::arg("u"), py::arg("candidate_vs"), py::arg("eps") = 0.0, py::arg("tol") = 1e-9);

  py::class_<Grid1D>(m, "Grid1D")
      .def(py::init<double, double, double>(), py::arg("lower"), py::arg("upper"), py::arg("step"))
      .def_readonly("lower", &Grid1D::lower)
      .def_readonly("upper", &Grid1D::upper)
      .def_readonly("step", &Grid1D::step)
      .def_readonly("count", &Grid1D::count)
      .def("points", &Grid1D::points);

  py::class_<LipschitzEstimates>(m, "LipschitzEstimates")
      .def_readonly("l", &LipschitzEstimates::l)
      .def_readonly("r", &LipschitzEstimates::r)
      .def_readonly("B", &LipschitzEstimates::B);

  m.def("phi_grid", &phi_grid, py::arg("problem"), py::arg("u"), py::arg("vgrid"));
  m.def("r_eps_grid", &r_eps_grid, py::arg("problem"), py::arg("u"), py::arg("vgrid"),
        py::arg("eps") = 0.0);
  m.def("local_maxima_grid", &local_maxima_grid, py::arg("problem"), py::arg("u"),
        py::arg("vgrid"));
  m.def("hausdorff_one_sided", &hausdorff_one_sided, py::arg("from_set"), py::arg("to_set"));
  m.def("zeta_gap", &zeta_gap, py::arg("problem"), py::arg("u"), py::arg("vgrid"));
  m.def("estimate_lipschitz", &estimate_lipschitz, py::arg("problem"), py::arg("ugrid"),
        py::arg("vgrid"));

  py::class_<GridMinimaxResult>(m, "GridMinimaxResult")
      .def_readonly("u_hat", &GridMinimaxResult::u_hat)
      .def_readonly("phi_at_u_hat", &GridMinimaxResult::phi_at_u_hat);

  m.def("grid_minimax", &grid_minimax, py::arg("problem"), py::arg("ugrid"), py::arg("vgrid"));

  py::class_<TrialRecord>(m, "TrialRecord")
      .def_readonly("k", &TrialRecord::k)
      .def_readonly("trial", &TrialRecord::trial)
      .def_readonly("iter", &TrialRecord::iter)
      .def_readonly("u", &TrialRecord::u)
      .def_readonly("dist", &TrialRecord::dist)
      .def_readonly("phi_hat", &TrialRecord::phi_hat)
      .def_readonly("stop_reason", &TrialRecord::stop_reason);

  py::class_<SummaryRow>(m, "SummaryRow")
      .def_readonly("k", &SummaryRow::k)
      .def_readonly("iter", &SummaryRow::iter)
      .def_readonly("mean_dist", &SummaryRow::mean_dist)
      .def_readonly("std_dist", &SummaryRow::std_dist);

  py::class_<ExperimentResult>(m, "ExperimentResult")
      .def_readonly("surface", &ExperimentResult::surface)
      .def_readonly("records", &ExperimentResult::records)
      .def_readonly("summary", &ExperimentResult::summary)
      .def("csv", [](const ExperimentResult& r) {
        std::ostringstream trials, summary;
        write_csv(r, trials, summary);
        return py::make_tuple(trials.str(), summary.str());
      });

  m.def(
      "run_experiment",
      [](const std::string& surface, const std::vector<int>& k_values, int trials, int iterations,
         double rho0, double eta0, std::uint64_t seed, int stationarity_every, int workers,
         const std::optional<std::pair<double, double>>& init_box) {
        ExperimentConfig cfg;
        cfg.surface = surface;
        cfg.k_values = k_values;
        cfg.trials = trials;
        cfg.iterations = iterations;
        cfg.rho0 = rho0;
        cfg.eta0 = eta0;
        cfg.seed = seed;
        cfg.stationarity_every = stationarity_every;
        cfg.workers = workers;
        if (init_box) {
          const BenchmarkSurface s = get_surface(surface);
          cfg.init_box = BoxDomain::cube(s.problem.dim_u, init_box->first, init_box->second);
        }
        py::gil_scoped_release release;  // pure C++ from here on
        return run_experiment(cfg);
      },
      py::arg("surface"), py::arg("k_values") = std::vector<int>{1, 2, 5, 10},
      py::arg("trials") = 100, py::arg("iterations") = 200, py::arg("rho0") = 0.1,
      py::arg("eta0") = 0.1, py::arg("seed") = 42, py::arg("stationarity_every") = 0,
      py::arg("workers") = 0, py::arg("init_box") = std::nullopt);

  m.def("write_csv",
        [](const ExperimentResult& result, const std::string& out_dir) {
          write_csv(result, out_dir);
        },
        py::arg("result"), py::arg("out_dir"));
}
