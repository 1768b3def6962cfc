#include "coldamp/draws.hpp"

#include <cmath>

#include "coldamp/budget.hpp"
#include "coldamp/error.hpp"

namespace coldamp {

InstrumentParams random_instrument(const InstrumentParams& center, double omega, std::mt19937_64& rng,
                                   double decades) {
    std::uniform_real_distribution<double> exponent(-decades, decades);
    auto scale = [&](double v) { return v * std::pow(10.0, exponent(rng)); };

    InstrumentParams p = center;
    p.overrides.clear();
    p.mass = scale(center.mass);
    p.stiffness = scale(center.stiffness);
    p.damping = scale(center.damping);
    p.coupling = scale(center.coupling);
    p.carrier_omega = scale(center.carrier_omega);
    p.r_loss = scale(center.r_loss);
    p.r_detect = scale(center.r_detect);
    p.r_amp = scale(center.r_amp);
    const double zf = scale(1.0 / (center.carrier_omega * center.c_feedback));
    const double zt = scale(1.0 / (2.0 * std::abs(omega) * center.c_transducer));
    set_parameter(p, "Z_f", zf, omega);
    set_parameter(p, "Z_t", zt, omega);
    p.theta_m = scale(center.theta_m);
    p.theta_a = scale(center.theta_a);
    p.theta_l = scale(center.theta_l);
    p.theta_r = scale(center.theta_r);
    return p;
}

std::vector<double> frequency_span(double omega, std::size_t count, double decades) {
    if (omega == 0.0) throw DomainError("frequency span needs a non-zero center");
    if (count == 1) return {omega};
    const double w = std::abs(omega);
    auto g = make_grid(w * std::pow(10.0, -decades / 2.0), w * std::pow(10.0, decades / 2.0), count,
                       Spacing::logarithmic);
    if (omega < 0.0)
        for (auto& v : g) v = -v;
    return g;
}

} // namespace coldamp
