#pragma once

#include <functional>
#include <string>
#include <vector>

#include "coldamp/params.hpp"

namespace coldamp {

/// Whole servo-loop gain as a function of the mechanical frequency.
using GainFunction = std::function<cplx(double omega)>;

enum class ServoMode { infinite_gain, finite_gain };

struct ServoParams {
    GainFunction gain;
    ServoMode mode = ServoMode::infinite_gain;

    /// Throws DomainError in finite-gain mode when no gain is set or |G_s(omega)| == 0.
    cplx gain_at(double omega) const;
};

/// Servo-synthesised impedance Xi_me = H_me + i K_me / Omega.
struct EffectiveImpedance {
    cplx value;
    double omega;

    double damping() const { return value.real(); }
    double stiffness() const { return value.imag() * omega; }
};

EffectiveImpedance effective_impedance(const InstrumentParams& p, cplx gain, double omega);

/// Gain that produces a prescribed effective impedance (inverse of effective_impedance).
cplx gain_for_impedance(const InstrumentParams& p, cplx target, double omega);

/// Proportional-derivative preset: Xi_me = damping + i stiffness / Omega at every frequency.
GainFunction pd_servo(const InstrumentParams& p, double damping, double stiffness);

/// lambda_alpha / G_s in the infinite-gain limit (dimensionless).
CoefficientSet cold_damped_velocity_coefficients(const InstrumentParams& p, double omega);

/// -sqrt(hbar R_r / 2 omega_t) * Omega / (2 kappa_t Z_f): converts the normalized
/// coefficients above to velocity per unit input field.
cplx cold_damped_velocity_prefactor(const InstrumentParams& p, double omega);

/// V_cd per unit input field, infinite-gain limit.
CoefficientSet cold_damped_velocity(const InstrumentParams& p, double omega);

/// Closed-loop force estimator coefficients, assembled as Xi_m (V_fr - V_cd).
CoefficientSet cold_damped_estimator(const InstrumentParams& p, double omega);

/// Sensing error V_se = (mu - lambda) / Xi_m per unit input field.
CoefficientSet sensing_error(const InstrumentParams& p, double omega);

/// Max entry-wise relative deviation from V_cd = -V_se.
double sensing_error_identity(const InstrumentParams& p, double omega);

/// Human-readable warnings for violated loop assumptions (R_r << |Z_f|).
std::vector<std::string> servo_assumption_warnings(const InstrumentParams& p);

} // namespace coldamp
