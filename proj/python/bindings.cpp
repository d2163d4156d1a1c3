#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sawmzi/device.hpp"
#include "sawmzi/experiments.hpp"
#include "sawmzi/interferometer.hpp"
#include "sawmzi/qubit.hpp"

namespace py = pybind11;
using namespace sawmzi;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Surface-acoustic-wave Mach-Zehnder interferometer toolkit";

  py::register_exception<CalibrationError>(m, "CalibrationError");

  py::class_<QubitState>(m, "QubitState")
      .def(py::init<>())
      .def(py::init([](complexd alpha, complexd beta) {
             QubitState psi{alpha, beta};
             validate(psi);
             return psi;
           }),
           py::arg("alpha"), py::arg("beta"))
      .def_readwrite("alpha", &QubitState::alpha)
      .def_readwrite("beta", &QubitState::beta)
      .def_static("ket0", &QubitState::ket0)
      .def_static("ket1", &QubitState::ket1);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<>())
      .def_readwrite("rho00", &DensityMatrix::rho00)
      .def_readwrite("rho01", &DensityMatrix::rho01)
      .def_readwrite("rho11", &DensityMatrix::rho11)
      .def("trace", &DensityMatrix::trace)
      .def("det", &DensityMatrix::det)
      .def_static("from_pure", &DensityMatrix::from_pure, py::arg("psi"));

  py::class_<BeamsplitterSpec>(m, "BeamsplitterSpec")
      .def(py::init<>())
      .def(py::init([](double theta, double gamma) {
             return BeamsplitterSpec{theta, gamma};
           }),
           py::arg("theta"), py::arg("gamma") = 0.0)
      .def_readwrite("theta", &BeamsplitterSpec::theta)
      .def_readwrite("gamma", &BeamsplitterSpec::gamma);

  py::class_<ChannelContraction>(m, "ChannelContraction")
      .def(py::init<>())
      .def(py::init([](double x, double y, double z) {
             return ChannelContraction{x, y, z};
           }),
           py::arg("eta_x"), py::arg("eta_y"), py::arg("eta_z"))
      .def_readwrite("eta_x", &ChannelContraction::eta_x)
      .def_readwrite("eta_y", &ChannelContraction::eta_y)
      .def_readwrite("eta_z", &ChannelContraction::eta_z);

  py::class_<BlochVector>(m, "BlochVector")
      .def_readonly("x", &BlochVector::x)
      .def_readonly("y", &BlochVector::y)
      .def_readonly("z", &BlochVector::z);

  m.def("bs_unitary_elements",
        [](const BeamsplitterSpec& spec) {
          const Unitary2 u = bs_unitary(spec);
          return std::vector<complexd>{u.u00, u.u01, u.u10, u.u11};
        },
        py::arg("spec"), "Row-major elements of the splitter unitary.");
  m.def("dephase", &dephase, py::arg("rho"), py::arg("tau"), py::arg("t2"));
  m.def("bloch_vector", &bloch_vector, py::arg("rho"));
  m.def("check_complete_positivity", &check_complete_positivity, py::arg("c"),
        py::arg("tol") = 1e-12);

  py::class_<MziConfig>(m, "MziConfig")
      .def(py::init<>())
      .def_readwrite("bs1", &MziConfig::bs1)
      .def_readwrite("bs2", &MziConfig::bs2)
      .def_readwrite("phi", &MziConfig::phi)
      .def_readwrite("tau", &MziConfig::tau)
      .def_readwrite("t2", &MziConfig::t2)
      .def("coherence", &MziConfig::coherence);

  py::class_<DetectorProbs>(m, "DetectorProbs")
      .def_readonly("p0", &DetectorProbs::p0)
      .def_readonly("p1", &DetectorProbs::p1)
      .def("__repr__", [](const DetectorProbs& p) {
        return "DetectorProbs(p0=" + std::to_string(p.p0) +
               ", p1=" + std::to_string(p.p1) + ")";
      });

  py::class_<Visibility>(m, "Visibility")
      .def_readonly("v0", &Visibility::v0)
      .def_readonly("v1", &Visibility::v1);

  m.def("mzi_simulate", &mzi_simulate, py::arg("cfg"),
        py::arg("input") = QubitState::ket0());
  m.def("mzi_simulate_state", &mzi_simulate_state, py::arg("cfg"),
        py::arg("input") = QubitState::ket0());
  m.def("mzi_closed_form_probs", &mzi_closed_form_probs, py::arg("theta"),
        py::arg("gamma"), py::arg("phi"), py::arg("v"));
  m.def("mzi_closed_form_state", &mzi_closed_form_state, py::arg("theta"),
        py::arg("gamma"), py::arg("phi"), py::arg("v"));
  m.def("visibility_closed_form", &visibility_closed_form, py::arg("theta"),
        py::arg("v"));

  py::class_<FringeData>(m, "FringeData")
      .def(py::init<>())
      .def_readwrite("phi", &FringeData::phi)
      .def_readwrite("p0", &FringeData::p0)
      .def_readwrite("p1", &FringeData::p1)
      .def_readwrite("n_samples", &FringeData::n_samples)
      .def_readwrite("seed", &FringeData::seed);

  py::class_<VisibilityEstimate>(m, "VisibilityEstimate")
      .def_readonly("v0", &VisibilityEstimate::v0)
      .def_readonly("v1", &VisibilityEstimate::v1);

  m.def("fringe_sweep", &fringe_sweep, py::arg("cfg"), py::arg("n_points"),
        py::arg("n_samples") = std::nullopt, py::arg("seed") = std::nullopt);
  m.def("extract_visibility", &extract_visibility, py::arg("data"));
  m.def("fit_visibility", &fit_visibility, py::arg("data"));
  m.def("mean_p0", &mean_p0, py::arg("data"));
  m.def("mean_p1", &mean_p1, py::arg("data"));
  m.def("to_csv", &to_csv, py::arg("data"));

  py::class_<CalibrationResult>(m, "CalibrationResult")
      .def_readonly("theta1_hat", &CalibrationResult::theta1_hat)
      .def_readonly("theta2_hat", &CalibrationResult::theta2_hat)
      .def_readonly("v1_max", &CalibrationResult::v1_max);

  py::class_<SimulatedMzi>(m, "SimulatedMzi")
      .def(py::init<>())
      .def_readwrite("theta1_offset", &SimulatedMzi::theta1_offset)
      .def_readwrite("theta2_offset", &SimulatedMzi::theta2_offset)
      .def_readwrite("gamma1", &SimulatedMzi::gamma1)
      .def_readwrite("tau", &SimulatedMzi::tau)
      .def_readwrite("t2", &SimulatedMzi::t2)
      .def_readwrite("n_points", &SimulatedMzi::n_points)
      .def_readwrite("theta2_fixed", &SimulatedMzi::theta2_fixed)
      .def("actual_theta1", &SimulatedMzi::actual_theta1, py::arg("cmd"))
      .def("actual_theta2", &SimulatedMzi::actual_theta2, py::arg("cmd"))
      .def("__call__", &SimulatedMzi::operator(), py::arg("theta1_cmd"),
           py::arg("theta2_cmd"));

  m.def("calibrate",
        [](const SweepFn& device, double tol) { return calibrate(device, tol); },
        py::arg("device"), py::arg("tol") = 1e-6,
        "Two-stage splitter tuning against any callable mapping two "
        "commanded angles to FringeData.");

  py::class_<T2Design>(m, "T2Design")
      .def_readonly("lengths", &T2Design::lengths)
      .def_readonly("taus", &T2Design::taus);

  py::class_<T2FitResult>(m, "T2FitResult")
      .def_readonly("t2_hat", &T2FitResult::t2_hat)
      .def_readonly("amplitude_hat", &T2FitResult::amplitude_hat)
      .def_readonly("residual_rms", &T2FitResult::residual_rms)
      .def_readonly("covariance", &T2FitResult::covariance)
      .def_readonly("t2_stderr", &T2FitResult::t2_stderr)
      .def_property_readonly_static(
          "kNoDecay", [](py::object) { return T2FitResult::kNoDecay; });

  m.def("design_t2_experiment", &design_t2_experiment, py::arg("t2_guess"),
        py::arg("n_settings"), py::arg("v_saw") = 2700.0);
  m.def("estimate_t2", &estimate_t2, py::arg("taus"), py::arg("visibilities"));
  m.def("t2_csv", &t2_csv, py::arg("taus"), py::arg("visibilities"),
        py::arg("fit"));

  py::class_<DeviceParams>(m, "DeviceParams")
      .def(py::init<>())
      .def_readwrite("v_saw", &DeviceParams::v_saw)
      .def_readwrite("d", &DeviceParams::d)
      .def_readwrite("l_phase", &DeviceParams::l_phase)
      .def_readwrite("l_tunnel", &DeviceParams::l_tunnel)
      .def_readwrite("area", &DeviceParams::area)
      .def_readwrite("temperature", &DeviceParams::temperature)
      .def_readwrite("f_saw", &DeviceParams::f_saw);

  py::class_<TunnelSpec>(m, "TunnelSpec")
      .def(py::init<>())
      .def(py::init([](double delta, double epsilon) {
             return TunnelSpec{delta, epsilon};
           }),
           py::arg("delta"), py::arg("epsilon") = 0.0)
      .def_readwrite("delta", &TunnelSpec::delta)
      .def_readwrite("epsilon", &TunnelSpec::epsilon);

  py::class_<TunnelAngle>(m, "TunnelAngle")
      .def_readonly("spec", &TunnelAngle::spec)
      .def_readonly("wraps", &TunnelAngle::wraps)
      .def_readonly("theta_raw", &TunnelAngle::theta_raw);

  py::class_<FieldEstimate>(m, "FieldEstimate")
      .def_readonly("e_hat", &FieldEstimate::e_hat)
      .def_readonly("sigma", &FieldEstimate::sigma)
      .def_readonly("n_electrons", &FieldEstimate::n_electrons);

  m.def("transit_time", &transit_time, py::arg("length"), py::arg("v_saw"));
  m.def("efield_phase", &efield_phase, py::arg("e_field"), py::arg("d"),
        py::arg("l"), py::arg("v_saw"));
  m.def("max_gate_length", &max_gate_length, py::arg("v_min"),
        py::arg("v_saw"));
  m.def("ab_phase", &ab_phase, py::arg("b_field"), py::arg("area"));
  m.def("ab_field_for_2pi", &ab_field_for_2pi, py::arg("area"));
  m.def("tunnel_angle", &tunnel_angle, py::arg("spec"), py::arg("gap_length"),
        py::arg("v_saw"));
  m.def("thermal_energy", &thermal_energy, py::arg("temperature"));
  m.def("shot_noise_relative", &shot_noise_relative, py::arg("f_saw"),
        py::arg("delta_t"));
  m.def("sense_field", &sense_field, py::arg("device"), py::arg("observed_p1"),
        py::arg("working_point"), py::arg("delta_t"));

  m.attr("__version__") = "0.1.0";
}
