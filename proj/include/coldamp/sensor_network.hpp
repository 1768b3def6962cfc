#pragma once

#include <optional>
#include <vector>

#include "coldamp/network.hpp"
#include "coldamp/params.hpp"

namespace coldamp {

/// Raw element relations of one capacitive-sensor channel at mechanical frequency
/// omega, written on the two slow quadratures of every electrical line:
/// mechanical line (H_m), transducer three-port, loss line R_l, ideal charge
/// amplifier with noise lines a, b and reactive feedback Z_f, detection line R_r.
/// With `servo_gain` the force -G_s r1_out is fed back onto the proof mass.
///
/// Unknown names: V, F_m, m_out and U{n}, It{n}, Il{n}, If{n}, Ur{n}, l{n}_out,
/// r{n}_out for n = 1, 2. Inputs: the drive F_ext and one field per Line label.
LinearNetwork build_sensor_network(const InstrumentParams& p, std::optional<cplx> servo_gain,
                                   double omega);

/// Transfer rows of a solved sensor network.
struct SensorSolution {
    ScatteringResult result;

    CoefficientSet velocity() const;     // V per unit input field
    cplx velocity_drive() const;         // V per unit F_ext
    CoefficientSet detection() const;    // r1_out per unit input field
    cplx detection_drive() const;        // r1_out per unit F_ext

    /// r1_out normalized so that the F_ext coefficient is one.
    CoefficientSet estimator() const;
};

SensorSolution solve_sensor(const InstrumentParams& p, double omega,
                            std::optional<cplx> servo_gain = std::nullopt);

/// Xi_m times the solved open-loop velocity row: the numerical counterpart of
/// free_mass_coefficients.
CoefficientSet oracle_free_mass_coefficients(const InstrumentParams& p, double omega);

/// Outgoing ports whose relations involve only passive lines (m, l1, l2).
std::vector<std::string> passive_output_labels();

// Toy networks used to exercise the solver and the commutator check.

/// Two lines of impedance r joined at one node.
LinearNetwork build_matched_junction(double r, double omega);

/// One line terminated by an open circuit (I = 0).
LinearNetwork build_open_line(double r, double omega);

/// Several lines of arbitrary impedances joined in parallel at one node.
LinearNetwork build_parallel_junction(const std::vector<double>& impedances, double omega);

/// Two lines connected through a series reactance i*x.
LinearNetwork build_series_reactance(double r1, double r2, double x, double omega);

} // namespace coldamp
