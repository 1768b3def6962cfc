#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>

#include "coldamp/budget.hpp"
#include "coldamp/config.hpp"
#include "coldamp/error.hpp"
#include "coldamp/noise.hpp"
#include "coldamp/sensor.hpp"
#include "coldamp/sensor_network.hpp"
#include "coldamp/servo.hpp"
#include "coldamp/verify.hpp"

namespace py = pybind11;
using namespace coldamp;

namespace {

py::dict as_dict(const CoefficientSet& c) {
    py::dict d;
    for (Line l : kAllLines) d[py::str(std::string(label(l)))] = c[l];
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Noise budget of a cold-damped capacitive accelerometer";
    m.attr("HBAR") = kHbar;
    m.attr("K_BOLTZMANN") = kBoltzmann;

    auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    auto config = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    (void)domain;
    (void)config;
    (void)numerical;

    py::class_<InstrumentParams>(m, "InstrumentParams")
        .def(py::init<>())
        .def_readwrite("mass", &InstrumentParams::mass)
        .def_readwrite("stiffness", &InstrumentParams::stiffness)
        .def_readwrite("damping", &InstrumentParams::damping)
        .def_readwrite("coupling", &InstrumentParams::coupling)
        .def_readwrite("carrier_omega", &InstrumentParams::carrier_omega)
        .def_readwrite("r_loss", &InstrumentParams::r_loss)
        .def_readwrite("r_detect", &InstrumentParams::r_detect)
        .def_readwrite("r_amp", &InstrumentParams::r_amp)
        .def_readwrite("c_feedback", &InstrumentParams::c_feedback)
        .def_readwrite("c_transducer", &InstrumentParams::c_transducer)
        .def_readwrite("theta_m", &InstrumentParams::theta_m)
        .def_readwrite("theta_a", &InstrumentParams::theta_a)
        .def_readwrite("theta_l", &InstrumentParams::theta_l)
        .def_readwrite("theta_r", &InstrumentParams::theta_r)
        .def("validate", &InstrumentParams::validate)
        .def("feedback_impedance", &InstrumentParams::feedback_impedance)
        .def("mechanical_resistance", &InstrumentParams::mechanical_resistance, py::arg("omega"))
        .def("set", [](InstrumentParams& p, const std::string& name, double value, double omega) {
            set_parameter(p, name, value, omega);
        }, py::arg("name"), py::arg("value"), py::arg("omega"))
        .def(py::self == py::self)
        .def("__copy__", [](const InstrumentParams& p) { return p; });

    py::class_<Config>(m, "Config")
        .def(py::init<>())
        .def_readwrite("params", &Config::params)
        .def_readwrite("omega", &Config::omega)
        .def(py::self == py::self);

    m.def("reference", [] {
        auto r = microscope_reference();
        return Config{r.params, r.omega};
    }, "The space-mission instrument at its reference frequency.");
    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("load_config", &load_config, py::arg("path"));
    m.def("dump_config", &dump_config, py::arg("config"));
    m.def("config_digest", &config_digest_hex, py::arg("config"));

    m.def("effective_energy", [](double temperature, double omega) {
        return effective_temperature(temperature, omega).energy_per_mode;
    }, py::arg("temperature"), py::arg("omega"), "k Theta in joules.");

    py::class_<BudgetPoint>(m, "BudgetPoint")
        .def_readonly("omega", &BudgetPoint::omega)
        .def_readonly("delta", &BudgetPoint::delta)
        .def_readonly("sigma_vfr", &BudgetPoint::sigma_vfr)
        .def_readonly("sigma_vse", &BudgetPoint::sigma_vse)
        .def_readonly("sigma_cross", &BudgetPoint::sigma_cross)
        .def_readonly("sigma_ff", &BudgetPoint::sigma_ff)
        .def_readonly("accel_sensitivity", &BudgetPoint::accel_sensitivity)
        .def_readonly("warnings", &BudgetPoint::warnings);

    py::class_<SpectrumBreakdown>(m, "SpectrumBreakdown")
        .def_readonly("total", &SpectrumBreakdown::total)
        .def_readonly("langevin", &SpectrumBreakdown::langevin)
        .def_readonly("back_action", &SpectrumBreakdown::back_action)
        .def_readonly("sensing", &SpectrumBreakdown::sensing)
        .def_readonly("interference", &SpectrumBreakdown::interference);

    m.def("budget", &budget_point, py::arg("params"), py::arg("omega"));
    m.def("breakdown", &sensor_noise_spectrum, py::arg("params"), py::arg("omega"));
    m.def("sweep_frequency", [](const InstrumentParams& p, const std::vector<double>& omegas) {
        py::gil_scoped_release release;
        return sweep_frequency(p, omegas);
    }, py::arg("params"), py::arg("omegas"));
    m.def("sweep_parameter", [](const InstrumentParams& p, const std::string& name,
                                const std::vector<double>& values, double omega) {
        py::gil_scoped_release release;
        return sweep_parameter(p, name, values, omega);
    }, py::arg("params"), py::arg("name"), py::arg("values"), py::arg("omega"));

    m.def("free_mass_coefficients", [](const InstrumentParams& p, double w) {
        return as_dict(free_mass_coefficients(p, w));
    }, py::arg("params"), py::arg("omega"));
    m.def("estimator_coefficients", [](const InstrumentParams& p, double w) {
        return as_dict(estimator_coefficients(p, w));
    }, py::arg("params"), py::arg("omega"));
    m.def("network_estimator", [](const InstrumentParams& p, double w) {
        return as_dict(solve_sensor(p, w).estimator());
    }, py::arg("params"), py::arg("omega"), "Estimator row of the solved element network.");
    m.def("cold_damped_estimator", [](const InstrumentParams& p, double w) {
        return as_dict(cold_damped_estimator(p, w));
    }, py::arg("params"), py::arg("omega"));

    py::class_<MatchingResult>(m, "MatchingResult")
        .def_readonly("ratio_opt", &MatchingResult::ratio_opt)
        .def_readonly("sigma_opt", &MatchingResult::sigma_opt)
        .def_readonly("langevin_part", &MatchingResult::langevin_part)
        .def_readonly("detection_part", &MatchingResult::detection_part)
        .def_readonly("ratio_numeric", &MatchingResult::ratio_numeric)
        .def_readonly("sigma_numeric", &MatchingResult::sigma_numeric)
        .def_readonly("location_residual", &MatchingResult::location_residual)
        .def_readonly("value_residual", &MatchingResult::value_residual);
    m.def("optimal_matching", &optimal_matching, py::arg("params"), py::arg("omega"),
          py::arg("delta") = py::none());

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("deviation", &CheckResult::deviation)
        .def_readonly("tolerance", &CheckResult::tolerance)
        .def_readonly("gated", &CheckResult::gated)
        .def_property_readonly("passed", &CheckResult::passed);
    py::class_<VerifyReport>(m, "VerifyReport")
        .def_readonly("checks", &VerifyReport::checks)
        .def_property_readonly("passed", &VerifyReport::passed)
        .def("text", &VerifyReport::text);
    m.def("verify", [](const Config& c, double tolerance, std::size_t draws, std::uint64_t seed) {
        VerifyOptions o;
        o.tolerance = tolerance;
        o.draws = draws;
        o.seed = seed;
        py::gil_scoped_release release;
        return run_verification(c, o);
    }, py::arg("config"), py::arg("tolerance") = 1e-8, py::arg("draws") = 200, py::arg("seed") = 1);
}
