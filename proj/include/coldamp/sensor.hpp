#pragma once

#include "coldamp/noise.hpp"
#include "coldamp/params.hpp"

namespace coldamp {

/// Free-running mechanical impedance Xi_m = H_m - i M Omega + i K / Omega.
struct MechanicalImpedance {
    cplx value;

    double damping() const { return value.real(); }
};

/// Added force noise of the open-loop sensor and its physical decomposition.
/// All fields in N^2/Hz. `interference` carries its sign.
struct SpectrumBreakdown {
    double total = 0.0;          // sum over lines of |mu|^2 sigma
    double langevin = 0.0;       // 2 H_m k Theta_m
    double back_action = 0.0;    // 8 R_a kappa^2 k Theta_a
    double sensing = 0.0;        // |Xi_m|^2 sigma_VseVse
    double interference = 0.0;   // |Xi_m|^2 sigma_VfrVse

    double components_sum() const { return langevin + back_action + sensing + interference; }
};

MechanicalImpedance mechanical_impedance(const InstrumentParams& p, double omega);

/// Z_t = -1/(2 i Omega C_t), purely imaginary.
cplx transducer_impedance(const InstrumentParams& p, double omega);

/// The nine noise lines with their impedances and physical temperatures.
std::array<NoiseLine, kLineCount> noise_lines(const InstrumentParams& p);

/// Input spectra per line: the mechanical line at Omega, electrical quadratures at omega_t.
CoefficientSet line_spectra(const InstrumentParams& p, double omega);

/// Coefficients lambda of Xi_m V_fr = F_ext + sum lambda alpha^in.
CoefficientSet free_mass_coefficients(const InstrumentParams& p, double omega);

/// Coefficients mu of the normalized force estimator F_hat = F_ext + sum mu alpha^in.
/// Requires kappa_t != 0.
CoefficientSet estimator_coefficients(const InstrumentParams& p, double omega);

/// sum_alpha |c_alpha|^2 sigma_alpha for any coefficient set.
double quadratic_form(const CoefficientSet& c, const CoefficientSet& spectra);

SpectrumBreakdown sensor_noise_spectrum(const InstrumentParams& p, double omega);

} // namespace coldamp
