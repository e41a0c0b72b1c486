#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "xyzdm/entanglement.hpp"
#include "xyzdm/model.hpp"
#include "xyzdm/sweep.hpp"
#include "xyzdm/teleportation.hpp"
#include "xyzdm/thermal.hpp"
#include "xyzdm/verify.hpp"

namespace py = pybind11;
using namespace xyzdm;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-qubit thermal entanglement and teleportation toolkit";

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double J, double gamma, double Jz, double D, double B,
                       double b, double T) {
             return ModelParams{J, gamma, Jz, D, B, b, T};
           }),
           py::arg("J") = 1.0, py::arg("gamma") = 0.0, py::arg("Jz") = 0.0,
           py::arg("D") = 0.0, py::arg("B") = 0.0, py::arg("b") = 0.0,
           py::arg("T") = 1.0)
      .def_readwrite("J", &ModelParams::J)
      .def_readwrite("gamma", &ModelParams::gamma)
      .def_readwrite("Jz", &ModelParams::Jz)
      .def_readwrite("D", &ModelParams::D)
      .def_readwrite("B", &ModelParams::B)
      .def_readwrite("b", &ModelParams::b)
      .def_readwrite("T", &ModelParams::T)
      .def("__repr__", [](const ModelParams& p) {
        std::ostringstream os;
        os << "ModelParams(J=" << p.J << ", gamma=" << p.gamma
           << ", Jz=" << p.Jz << ", D=" << p.D << ", B=" << p.B
           << ", b=" << p.b << ", T=" << p.T << ")";
        return os.str();
      });

  py::class_<InputState>(m, "InputState")
      .def(py::init([](double theta, double phi) {
             return InputState{theta, phi};
           }),
           py::arg("theta") = 0.0, py::arg("phi") = 0.0)
      .def_readwrite("theta", &InputState::theta)
      .def_readwrite("phi", &InputState::phi);

  py::class_<XState>(m, "XState")
      .def_readonly("w1", &XState::w1)
      .def_readonly("w2", &XState::w2)
      .def_readonly("mu_plus", &XState::mu_plus)
      .def_readonly("mu_minus", &XState::mu_minus)
      .def_readonly("z", &XState::z)
      .def_readonly("nu", &XState::nu)
      .def_readonly("log_partition", &XState::log_partition)
      .def("partition", &XState::partition)
      .def("trace", &XState::trace);

  py::class_<LambdaQuad>(m, "LambdaQuad")
      .def_readonly("l1", &LambdaQuad::l1)
      .def_readonly("l2", &LambdaQuad::l2)
      .def_readonly("l3", &LambdaQuad::l3)
      .def_readonly("l4", &LambdaQuad::l4)
      .def("max", &LambdaQuad::max)
      .def("sum", &LambdaQuad::sum)
      .def("central_max", &LambdaQuad::central_max)
      .def("outer_max", &LambdaQuad::outer_max)
      .def("concurrence", &LambdaQuad::concurrence);

  py::class_<SpectralData>(m, "SpectralData")
      .def_readonly("energies", &SpectralData::energies)
      .def_readonly("xi", &SpectralData::xi)
      .def_readonly("eta", &SpectralData::eta)
      .def("ground_energy", &SpectralData::ground_energy)
      .def("ground_index", &SpectralData::ground_index)
      .def("ground_gap", &SpectralData::ground_gap)
      .def("state", [](const SpectralData& sd, int i) {
        if (i < 0 || i > 3) throw std::invalid_argument("state index in 0..3");
        return sd.states[static_cast<std::size_t>(i)];
      });

  py::enum_<Region>(m, "Region")
      .value("Separable", Region::Separable)
      .value("MainLowT", Region::MainLowT)
      .value("Revival", Region::Revival)
      .value("HighDm", Region::HighDm);

  py::class_<FidelitySplit>(m, "FidelitySplit")
      .def_readonly("classical", &FidelitySplit::classical)
      .def_readonly("quantum", &FidelitySplit::quantum);

  py::class_<CriticalTempScan>(m, "CriticalTempScan")
      .def(py::init<>())
      .def_readwrite("t_min", &CriticalTempScan::t_min)
      .def_readwrite("t_max", &CriticalTempScan::t_max)
      .def_readwrite("points", &CriticalTempScan::points)
      .def_readwrite("bisect_tol", &CriticalTempScan::bisect_tol);

  py::class_<AxisSpec>(m, "AxisSpec")
      .def_static("uniform", &AxisSpec::uniform_axis, py::arg("name"),
                  py::arg("start"), py::arg("stop"), py::arg("steps"))
      .def_static("list", &AxisSpec::list_axis, py::arg("name"),
                  py::arg("values"))
      .def_readonly("name", &AxisSpec::name)
      .def_readonly("values", &AxisSpec::values)
      .def_readonly("uniform_grid", &AxisSpec::uniform);

  py::class_<SweepSpec>(m, "SweepSpec")
      .def(py::init<>())
      .def_readwrite("fixed", &SweepSpec::fixed)
      .def_readwrite("input", &SweepSpec::input)
      .def_readwrite("axes", &SweepSpec::axes)
      .def_readwrite("quantities", &SweepSpec::quantities)
      .def_readwrite("note", &SweepSpec::note)
      .def_readwrite("recipe", &SweepSpec::recipe);

  py::class_<Transition>(m, "Transition")
      .def_readonly("quantity", &Transition::quantity)
      .def_readonly("axis", &Transition::axis)
      .def_readonly("left", &Transition::left)
      .def_readonly("right", &Transition::right)
      .def_readonly("other_axis", &Transition::other_axis)
      .def_readonly("other_value", &Transition::other_value)
      .def_readonly("delta", &Transition::delta);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("spec", &SweepResult::spec)
      .def_readonly("shape", &SweepResult::shape)
      .def_readonly("columns", &SweepResult::columns)
      .def_readonly("transitions", &SweepResult::transitions);

  py::class_<SuiteResult>(m, "SuiteResult")
      .def_readonly("name", &SuiteResult::name)
      .def_readonly("samples", &SuiteResult::samples)
      .def_readonly("max_error", &SuiteResult::max_error)
      .def_readonly("tolerance", &SuiteResult::tolerance)
      .def_readonly("audit", &SuiteResult::audit)
      .def_readonly("ok", &SuiteResult::ok)
      .def_readonly("details", &SuiteResult::details)
      .def("status", &SuiteResult::status);

  m.def("validate_params", &validate_params, py::arg("params"));
  m.def("xi", &xi, py::arg("params"));
  m.def("eta", &eta, py::arg("params"));
  m.def("build_hamiltonian", &build_hamiltonian, py::arg("params"));
  m.def("spectral_data", &spectral_data, py::arg("params"));
  m.def("ground_state_density", &ground_state_density, py::arg("params"),
        py::arg("tol") = 1e-9);
  m.def("pauli", &pauli, py::arg("k"));
  m.def("bell_state", &bell_state, py::arg("k"));

  m.def("gibbs_closed_form", &gibbs_closed_form, py::arg("params"));
  m.def("gibbs_numeric", &gibbs_numeric, py::arg("params"));
  m.def("xstate_to_matrix", &xstate_to_matrix, py::arg("state"));
  m.def("matrix_to_xstate", &matrix_to_xstate, py::arg("matrix"),
        py::arg("tol") = 1e-10);

  m.def("thermal_lambdas", &thermal_lambdas, py::arg("params"));
  m.def("thermal_concurrence", &thermal_concurrence, py::arg("params"));
  m.def("wootters_lambdas", &wootters_lambdas, py::arg("rho"));
  m.def("wootters_concurrence", &wootters_concurrence, py::arg("rho"));
  m.def("entanglement_of_formation", &entanglement_of_formation,
        py::arg("concurrence"));
  m.def("ground_state_concurrence", &ground_state_concurrence,
        py::arg("params"), py::arg("tol") = 1e-9);
  m.def("critical_dm", &critical_dm, py::arg("params"));
  m.def("critical_b", &critical_b, py::arg("params"));
  m.def("critical_temperatures", &critical_temperatures, py::arg("params"),
        py::arg("scan") = CriticalTempScan{});
  m.def("classify_region", &classify_region, py::arg("params"));
  m.def("region_name", &region_name, py::arg("region"));

  m.def("validate_input", &validate_input, py::arg("input"));
  m.def("input_concurrence", &input_concurrence, py::arg("input"));
  m.def("input_density", &input_density, py::arg("input"));
  m.def("bell_probabilities", &bell_probabilities, py::arg("channel"));
  m.def("teleport_density", &teleport_density, py::arg("channel"),
        py::arg("rho_in"));
  m.def("output_closed_form", &output_closed_form, py::arg("params"),
        py::arg("input"));
  m.def("output_lambdas_closed", &output_lambdas_closed, py::arg("params"),
        py::arg("input"));
  m.def("output_concurrence_closed", &output_concurrence_closed,
        py::arg("params"), py::arg("input"));
  m.def("fidelity", &fidelity, py::arg("rho_in"), py::arg("rho_out"),
        py::arg("tol") = 1e-8);
  m.def("fidelity_angle_form", &fidelity_angle_form, py::arg("params"),
        py::arg("input"));
  m.def("fidelity_split", &fidelity_split, py::arg("params"), py::arg("phi"));
  m.def("fidelity_closed", &fidelity_closed, py::arg("params"),
        py::arg("input"));
  m.def("average_fidelity", &average_fidelity, py::arg("params"));
  m.def("average_fidelity_quadrature", &average_fidelity_quadrature,
        py::arg("params"));

  m.def("known_quantities", &known_quantities);
  m.def("validate_spec", &validate_spec, py::arg("spec"));
  m.def("run_sweep", &run_sweep, py::arg("spec"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("recipe", &recipe, py::arg("name"));
  m.def("recipe_names", &recipe_names);
  m.def("format_double", &format_double, py::arg("value"));
  m.def(
      "csv_text",
      [](const SweepResult& r) {
        std::ostringstream os;
        emit_csv(r, os);
        return os.str();
      },
      py::arg("result"));

  m.def("verification_suites", &verification_suites);
  m.def(
      "run_verification",
      [](std::uint64_t seed, int samples, const std::string& suite,
         bool strict) {
        VerifyOptions opts;
        opts.seed = seed;
        opts.samples = samples;
        opts.suite = suite;
        opts.strict = strict;
        return run_verification(opts);
      },
      py::arg("seed") = 1, py::arg("samples") = 0, py::arg("suite") = "",
      py::arg("strict") = false, py::call_guard<py::gil_scoped_release>());
  m.def(
      "report_text",
      [](const std::vector<SuiteResult>& results) {
        std::ostringstream os;
        render_report(results, os);
        return os.str();
      },
      py::arg("results"));
}
