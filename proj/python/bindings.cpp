#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "valironkit/ball.hpp"
#include "valironkit/cli.hpp"
#include "valironkit/dynamics1d.hpp"
#include "valironkit/errors.hpp"
#include "valironkit/valiron.hpp"

namespace py = pybind11;
using namespace valironkit;

namespace {

maps::MapDescriptor load(const std::string& map_arg) { return maps::ensure_certified(cli::load_map(map_arg)); }

py::tuple run(const std::vector<std::string>& args) {
  std::vector<std::string> all{"valironkit"};
  all.insert(all.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : all) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Iteration of analytic self-maps: bindings to the C++ core";
  m.attr("__version__") = VALIRONKIT_VERSION;
  m.attr("KORANYI_THRESHOLD") = kKoranyiThreshold;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NotSelfMapError>(m, "NotSelfMapError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
  py::register_exception<Inconclusive>(m, "Inconclusive", PyExc_RuntimeError);
  py::register_exception<SingularSystemError>(m, "SingularSystemError", PyExc_ArithmeticError);

  m.def("run", &run, py::arg("args"),
        "Run a CLI command in-process; returns (exit_code, stdout, stderr).");

  m.def(
      "evaluate", [](const std::string& map_arg, const Eigen::VectorXcd& z) -> Eigen::VectorXcd {
        return maps::evaluate(cli::load_map(map_arg), z);
      },
      py::arg("map"), py::arg("z"), "Evaluate a map (JSON text, file path or corpus:<name>) at a point.");

  m.def(
      "orbit",
      [](const std::string& map_arg, cplx z0, int max_n) { return dynamics::iterate_orbit(load(map_arg), z0, max_n).points; },
      py::arg("map"), py::arg("z0"), py::arg("max_n") = 200);

  m.def(
      "limit_data",
      [](const std::string& map_arg, cplx z0, int max_n) {
        const auto d = valiron::limit_data(dynamics::iterate_orbit(load(map_arg), z0, max_n));
        return py::dict(py::arg("A") = d.A, py::arg("b_inf") = d.b_inf, py::arg("theta") = d.theta,
                        py::arg("theta_direct") = d.theta_direct);
      },
      py::arg("map"), py::arg("z0") = cplx(0.0, 1.0), py::arg("max_n") = 200);

  m.def(
      "sigma",
      [](const std::string& map_arg, const std::vector<cplx>& zs, cplx z0) {
        const valiron::ValironModel model(load(map_arg), z0);
        std::vector<cplx> out;
        for (cplx z : zs) out.push_back(model.sigma(z).value);
        return out;
      },
      py::arg("map"), py::arg("points"), py::arg("z0") = cplx(0.0, 1.0),
      "Intertwining map sigma of a half-plane map at the given points.");

  m.def(
      "ball_dilatation", [](const std::string& map_arg) { return ball::ball_dilatation(load(map_arg), false).c; },
      py::arg("map"));

  m.def(
      "psi_boundary_fixed_point",
      [](double A, const Eigen::VectorXcd& a, const Eigen::MatrixXcd& U) { return ball::psi_boundary_fixed_point(A, a, U); },
      py::arg("A"), py::arg("a"), py::arg("U"));
}
