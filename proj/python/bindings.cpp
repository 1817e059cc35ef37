#include "wlp/core.hpp"
#include "wlp/experiments.hpp"
#include "wlp/oracle.hpp"
#include "wlp/solver.hpp"
#include "wlp/theory.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace wlp;

namespace {

WeightVector make_weights(Index dim, double omega, const std::vector<Index>& support) {
  return WeightVector(omega, SupportEstimate(support, dim));
}

}  // namespace

PYBIND11_MODULE(_wlp, m) {
  m.doc() = "Weighted lp minimization with partial support information.";

  py::register_exception<RankDeficientError>(m, "RankDeficientError", PyExc_ValueError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);
  py::register_exception<theory::ConditionViolatedError>(m, "ConditionViolatedError", PyExc_ValueError);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("p", &SolverConfig::p)
      .def_readwrite("sigma_init", &SolverConfig::sigma_init)
      .def_readwrite("sigma_decay", &SolverConfig::sigma_decay)
      .def_readwrite("max_iters", &SolverConfig::max_iters)
      .def_readwrite("sigma_floor", &SolverConfig::sigma_floor)
      .def_readwrite("step_shrink", &SolverConfig::step_shrink)
      .def_readwrite("max_backtracks", &SolverConfig::max_backtracks)
      .def_readwrite("feasibility_tol", &SolverConfig::feasibility_tol);

  m.def(
      "solve",
      [](const Matrix& A, const Vector& b, const std::vector<Index>& support, double omega, double p,
         std::optional<SolverConfig> config) {
        SolverConfig cfg = config.value_or(SolverConfig{});
        cfg.p = p;
        SolveResult r;
        {
          py::gil_scoped_release release;
          r = solve(SensingOperator(A), Measurements{b, 0.0}, make_weights(A.cols(), omega, support), cfg);
        }
        py::dict trace;
        std::vector<double> sigma, objective, step, residual;
        for (const auto& rec : r.trace.records) {
          sigma.push_back(rec.sigma);
          objective.push_back(rec.objective);
          step.push_back(rec.step);
          residual.push_back(rec.residual);
        }
        trace["sigma"] = sigma;
        trace["objective"] = objective;
        trace["step"] = step;
        trace["residual"] = residual;
        trace["stop"] = to_string(r.trace.stop);
        return py::make_tuple(r.x, trace);
      },
      py::arg("A"), py::arg("b"), py::arg("support") = std::vector<Index>{}, py::arg("omega") = 1.0,
      py::arg("p") = 0.5, py::arg("config") = py::none(),
      "Minimize sum_i w_i^p |x_i|^p subject to A x = b. `support` holds 0-based indices weighted by omega.\n"
      "Returns (x, trace).");

  m.def(
      "weighted_lp_norm",
      [](const Vector& x, const std::vector<Index>& support, double omega, double p) {
        return weighted_lp_norm(x, make_weights(x.size(), omega, support), p);
      },
      py::arg("x"), py::arg("support") = std::vector<Index>{}, py::arg("omega") = 1.0, py::arg("p") = 1.0);

  m.def(
      "oracle_weighted_lp",
      [](const Matrix& A, const Vector& b, const std::vector<Index>& support, double omega, double p, int k_max) {
        const auto r = oracle_weighted_lp(A, b, make_weights(A.cols(), omega, support), p, k_max);
        return py::make_tuple(r.minimizer, r.support.indices(), r.objective_value);
      },
      py::arg("A"), py::arg("b"), py::arg("support") = std::vector<Index>{}, py::arg("omega") = 1.0,
      py::arg("p") = 0.5, py::arg("k_max") = 2, "Returns (minimizer, support, objective).");

  m.def("delta_hat_lp", &theory::delta_hat_lp, py::arg("a"), py::arg("p"));
  m.def("delta_hat_wl1", &theory::delta_hat_wl1, py::arg("a"), py::arg("omega"), py::arg("alpha"), py::arg("rho"));
  m.def("delta_hat_wlp", &theory::delta_hat_wlp, py::arg("a"), py::arg("p"), py::arg("omega"), py::arg("alpha"),
        py::arg("rho"));
  m.def(
      "error_constants",
      [](double p, double omega, double alpha, double rho, double a, double delta_ak, double delta_a1k, int k) {
        const auto c = theory::error_constants({p, omega, alpha, rho, a, k, delta_ak, delta_a1k});
        return py::make_tuple(c.c1, c.c2);
      },
      py::arg("p"), py::arg("omega"), py::arg("alpha"), py::arg("rho"), py::arg("a"), py::arg("delta_ak"),
      py::arg("delta_a1k"), py::arg("k") = 1, "Returns (C1, C2).");

  m.def(
      "run_sweep_csv",
      [](const std::string& config_text) {
        std::istringstream in(config_text);
        const ExperimentSpec spec = parse_experiment_config(in);
        std::ostringstream out;
        {
          py::gil_scoped_release release;
          write_sweep_csv(out, run_sweep(spec), false);
        }
        return out.str();
      },
      py::arg("config_text"), "Runs a sweep from flat 'key = value' config text and returns the CSV.");
}
