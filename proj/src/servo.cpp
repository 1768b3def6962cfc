#include "coldamp/servo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coldamp/error.hpp"
#include "coldamp/noise.hpp"
#include "coldamp/sensor.hpp"

namespace coldamp {

namespace {

constexpr cplx I{0.0, 1.0};

void require_frequency(double omega) {
    if (omega == 0.0 || !std::isfinite(omega))
        throw DomainError("mechanical frequency must be finite and non-zero");
}

void require_coupling(const InstrumentParams& p) {
    if (p.coupling == 0.0)
        throw DomainError("cold damping requires a non-zero electromechanical coupling");
}

// Loop transfer from G_s to Xi_me: r1_out carries the velocity with gain
// sqrt(2/(hbar omega_t R_r)) * 2 kappa_t Z_f omega_t / Omega.
cplx loop_factor(const InstrumentParams& p, double omega) {
    return std::sqrt(2.0 * p.carrier_omega / (kHbar * p.r_detect)) * 2.0 * p.coupling *
           p.feedback_impedance() / omega;
}

} // namespace

cplx ServoParams::gain_at(double omega) const {
    if (mode == ServoMode::infinite_gain)
        throw DomainError("infinite-gain servo has no finite gain value");
    if (!gain) throw DomainError("finite-gain servo requires a gain function");
    const cplx g = gain(omega);
    if (std::abs(g) == 0.0) throw DomainError("finite-gain servo requires |G_s| > 0");
    return g;
}

EffectiveImpedance effective_impedance(const InstrumentParams& p, cplx gain, double omega) {
    require_frequency(omega);
    return {loop_factor(p, omega) * gain, omega};
}

cplx gain_for_impedance(const InstrumentParams& p, cplx target, double omega) {
    require_frequency(omega);
    require_coupling(p);
    return target / loop_factor(p, omega);
}

GainFunction pd_servo(const InstrumentParams& p, double damping, double stiffness) {
    require_coupling(p);
    return [p, damping, stiffness](double omega) {
        return gain_for_impedance(p, cplx(damping, stiffness / omega), omega);
    };
}

CoefficientSet cold_damped_velocity_coefficients(const InstrumentParams& p, double omega) {
    require_frequency(omega);
    require_coupling(p);
    const cplx zf = p.feedback_impedance();
    const cplx zt = transducer_impedance(p, omega);
    const double ra = p.r_amp;
    const double rr = p.r_detect;
    const double rl = p.r_loss;

    CoefficientSet c;
    c[Line::l2] = -2.0 * I * zf / std::sqrt(rl * rr);
    c[Line::r1] = -1.0;
    c[Line::a1] = 2.0 * std::sqrt(ra / rr);
    c[Line::b1] = -c[Line::a1];
    const cplx pre = -2.0 * I * zf * std::sqrt(ra / rr);
    c[Line::a2] = pre * (1.0 / ra - 1.0 / rl - 1.0 / zt);
    c[Line::b2] = pre * (1.0 / ra + 1.0 / rl + 1.0 / zt);
    return c;
}

cplx cold_damped_velocity_prefactor(const InstrumentParams& p, double omega) {
    require_frequency(omega);
    require_coupling(p);
    return -std::sqrt(kHbar * p.r_detect / (2.0 * p.carrier_omega)) * omega /
           (2.0 * p.coupling * p.feedback_impedance());
}

CoefficientSet cold_damped_velocity(const InstrumentParams& p, double omega) {
    auto c = cold_damped_velocity_coefficients(p, omega);
    const cplx pre = cold_damped_velocity_prefactor(p, omega);
    for (auto& v : c.values) v *= pre;
    return c;
}

CoefficientSet cold_damped_estimator(const InstrumentParams& p, double omega) {
    const cplx xi = mechanical_impedance(p, omega).value;
    const auto lambda = free_mass_coefficients(p, omega);
    const auto v_cd = cold_damped_velocity(p, omega);
    CoefficientSet mu;
    for (Line l : kAllLines) mu[l] = lambda[l] - xi * v_cd[l];
    return mu;
}

CoefficientSet sensing_error(const InstrumentParams& p, double omega) {
    const cplx xi = mechanical_impedance(p, omega).value;
    const auto lambda = free_mass_coefficients(p, omega);
    const auto mu = estimator_coefficients(p, omega);
    CoefficientSet v_se;
    for (Line l : kAllLines) v_se[l] = (mu[l] - lambda[l]) / xi;
    return v_se;
}

double sensing_error_identity(const InstrumentParams& p, double omega) {
    const auto v_cd = cold_damped_velocity(p, omega);
    auto minus_v_se = sensing_error(p, omega);
    for (auto& v : minus_v_se.values) v = -v;
    return max_relative_deviation(v_cd, minus_v_se);
}

std::vector<std::string> servo_assumption_warnings(const InstrumentParams& p) {
    std::vector<std::string> out;
    const double ratio = p.r_detect / std::abs(p.feedback_impedance());
    if (!(ratio < 1e-2)) {
        std::ostringstream os;
        os << "R_r/|Z_f| = " << ratio << " is not << 1; the detection line is not negligible in the loop";
        out.push_back(os.str());
    }
    return out;
}

} // namespace coldamp
