#include "coldamp/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "coldamp/error.hpp"

namespace coldamp {

namespace {

constexpr std::array<std::string_view, kLineCount> kLabels{
    "m", "a1", "a2", "b1", "b2", "r1", "r2", "l1", "l2"};

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(name) + " must be positive and finite");
}

void require_non_negative(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw DomainError(std::string(name) + " must be non-negative and finite");
}

} // namespace

std::string_view label(Line line) { return kLabels[static_cast<std::size_t>(line)]; }

std::optional<Line> line_from_label(std::string_view text) {
    for (std::size_t i = 0; i < kLineCount; ++i)
        if (kLabels[i] == text) return static_cast<Line>(i);
    return std::nullopt;
}

void InstrumentParams::validate() const {
    require_positive(mass, "M");
    require_non_negative(stiffness, "K");
    require_positive(damping, "H_m");
    require_non_negative(coupling, "kappa_t");
    require_positive(carrier_omega, "omega_t");
    require_positive(r_loss, "R_l");
    require_positive(r_detect, "R_r");
    require_positive(r_amp, "R_a");
    require_positive(c_feedback, "C_f");
    require_positive(c_transducer, "C_t");
    require_non_negative(theta_m, "Theta_m");
    require_non_negative(theta_a, "Theta_a");
    require_non_negative(theta_l, "Theta_l");
    require_non_negative(theta_r, "Theta_r");
    for (const auto& o : overrides) {
        require_non_negative(o.stiffness, "K override");
        require_positive(o.damping, "H_m override");
    }
}

Mechanics InstrumentParams::mechanics_at(double omega) const {
    auto it = std::find_if(overrides.begin(), overrides.end(),
                           [omega](const MechanicalOverride& o) { return o.omega == omega; });
    if (it != overrides.end()) return {it->stiffness, it->damping};
    return {stiffness, damping};
}

cplx InstrumentParams::feedback_impedance() const {
    return 1.0 / cplx(0.0, -carrier_omega * c_feedback);
}

double InstrumentParams::mechanical_resistance(double omega) const {
    if (coupling == 0.0) throw DomainError("R_m is undefined without electromechanical coupling");
    return mechanics_at(omega).damping / (coupling * coupling);
}

ReferenceInstrument microscope_reference() {
    using std::numbers::pi;
    const double omega = 2.0 * pi * 5e-4;
    InstrumentParams p;
    p.mass = 0.27;
    p.stiffness = 4e-6;
    p.damping = 1.3e-5;
    p.coupling = 1e-7;
    p.carrier_omega = 2.0 * pi * 1e5;
    p.r_loss = 2.5e5;
    p.r_detect = 50.0;
    p.r_amp = 0.15e6;
    p.c_feedback = 1.0 / (p.carrier_omega * 1.6e5);   // |Z_f| = 1.6e5 ohm
    p.c_transducer = 1.0 / (2.0 * omega * 1e14);       // |Z_t| = 1e14 ohm at Omega
    p.theta_m = 300.0;
    p.theta_a = 1.5;
    p.theta_l = 300.0;
    p.theta_r = 300.0;
    return {p, omega};
}

double CoefficientSet::max_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

double max_relative_deviation(const CoefficientSet& got, const CoefficientSet& want) {
    const double scale = want.max_abs();
    double worst = 0.0;
    for (std::size_t i = 0; i < kLineCount; ++i) {
        const double diff = std::abs(got.values[i] - want.values[i]);
        if (diff == 0.0) continue;
        const double ref = std::abs(want.values[i]) > 0.0 ? std::abs(want.values[i]) : scale;
        worst = std::max(worst, ref > 0.0 ? diff / ref : diff);
    }
    return worst;
}

} // namespace coldamp
