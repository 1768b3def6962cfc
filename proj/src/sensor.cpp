#include "coldamp/sensor.hpp"

#include <cmath>

#include "coldamp/error.hpp"

namespace coldamp {

namespace {

constexpr cplx I{0.0, 1.0};

void require_frequency(double omega) {
    if (omega == 0.0 || !std::isfinite(omega))
        throw DomainError("mechanical frequency must be finite and non-zero");
}

} // namespace

MechanicalImpedance mechanical_impedance(const InstrumentParams& p, double omega) {
    require_frequency(omega);
    const auto mech = p.mechanics_at(omega);
    return {cplx(mech.damping, mech.stiffness / omega - p.mass * omega)};
}

cplx transducer_impedance(const InstrumentParams& p, double omega) {
    require_frequency(omega);
    if (!(p.c_transducer > 0.0)) throw DomainError("C_t must be positive");
    return -1.0 / (2.0 * I * omega * p.c_transducer);
}

std::array<NoiseLine, kLineCount> noise_lines(const InstrumentParams& p) {
    std::array<NoiseLine, kLineCount> lines;
    auto set = [&](Line l, double z, double t, bool conj = false) {
        lines[static_cast<std::size_t>(l)] = NoiseLine{std::string(label(l)), z, t, conj};
    };
    set(Line::m, p.damping, p.theta_m);
    set(Line::a1, p.r_amp, p.theta_a);
    set(Line::a2, p.r_amp, p.theta_a);
    set(Line::b1, p.r_amp, p.theta_a, true);
    set(Line::b2, p.r_amp, p.theta_a, true);
    set(Line::r1, p.r_detect, p.theta_r);
    set(Line::r2, p.r_detect, p.theta_r);
    set(Line::l1, p.r_loss, p.theta_l);
    set(Line::l2, p.r_loss, p.theta_l);
    return lines;
}

CoefficientSet line_spectra(const InstrumentParams& p, double omega) {
    require_frequency(omega);
    const auto lines = noise_lines(p);
    CoefficientSet s;
    for (Line l : kAllLines) {
        const auto& line = lines[static_cast<std::size_t>(l)];
        // The mechanical line lives at Omega; electrical quadratures are evaluated at the carrier.
        s[l] = l == Line::m ? input_spectrum(line, omega)
                            : quadrature_spectrum(line, p.carrier_omega);
    }
    return s;
}

CoefficientSet free_mass_coefficients(const InstrumentParams& p, double omega) {
    require_frequency(omega);
    const double h = p.mechanics_at(omega).damping;
    CoefficientSet c;
    c[Line::m] = -std::sqrt(2.0 * kHbar * std::abs(omega) * h);
    c[Line::a1] = -std::sqrt(2.0 * kHbar * p.carrier_omega * p.r_amp) * p.coupling;
    c[Line::b1] = -c[Line::a1];
    return c;
}

CoefficientSet estimator_coefficients(const InstrumentParams& p, double omega) {
    require_frequency(omega);
    if (p.coupling == 0.0)
        throw DomainError("force estimator requires a non-zero electromechanical coupling");

    const cplx xi = mechanical_impedance(p, omega).value;
    const cplx zf = p.feedback_impedance();
    const cplx zt = transducer_impedance(p, omega);
    const double wt = p.carrier_omega;
    const double kap = p.coupling;
    const double ra = p.r_amp;

    CoefficientSet mu = free_mass_coefficients(p, omega);
    mu[Line::l2] = -I * omega * std::sqrt(kHbar) / (std::sqrt(2.0 * p.r_loss * wt) * kap) * xi;
    mu[Line::r1] = -omega * std::sqrt(kHbar * p.r_detect) / (2.0 * std::sqrt(2.0 * wt) * zf * kap) * xi;
    mu[Line::a1] = std::sqrt(2.0 * kHbar * ra * wt) * (-kap + omega / (2.0 * kap * wt * zf) * xi);
    mu[Line::b1] = -mu[Line::a1];

    const cplx pre = -I * omega * std::sqrt(kHbar * ra) / (std::sqrt(2.0) * kap * std::sqrt(wt)) * xi;
    const cplx load = 1.0 / p.r_loss + 1.0 / zt;
    mu[Line::a2] = pre * (1.0 / ra - load);
    mu[Line::b2] = pre * (1.0 / ra + load);
    return mu;
}

double quadratic_form(const CoefficientSet& c, const CoefficientSet& spectra) {
    double sum = 0.0;
    for (Line l : kAllLines) sum += std::norm(c[l]) * spectra[l].real();
    return sum;
}

SpectrumBreakdown sensor_noise_spectrum(const InstrumentParams& p, double omega) {
    const auto mu = estimator_coefficients(p, omega);
    const auto spectra = line_spectra(p, omega);

    const auto mech = p.mechanics_at(omega);
    const cplx xi = mechanical_impedance(p, omega).value;
    const cplx zt = transducer_impedance(p, omega);
    const double wt = p.carrier_omega;
    const double kap2 = p.coupling * p.coupling;
    const double zf2 = std::norm(p.feedback_impedance());
    const double ra = p.r_amp;

    const double k_m = effective_temperature(p.theta_m, omega).energy_per_mode;
    const double k_a = effective_temperature(p.theta_a, wt).energy_per_mode;
    const double k_l = effective_temperature(p.theta_l, wt).energy_per_mode;
    const double k_r = effective_temperature(p.theta_r, wt).energy_per_mode;

    SpectrumBreakdown b;
    b.total = quadratic_form(mu, spectra);
    b.langevin = 2.0 * mech.damping * k_m;
    b.back_action = 8.0 * ra * kap2 * k_a;

    const double transposition = omega * omega / (wt * wt * kap2);
    const double electrical = k_l / p.r_loss + p.r_detect * k_r / (4.0 * zf2) +
                              2.0 * ra * (1.0 / zf2 + 1.0 / (ra * ra) +
                                          std::norm(1.0 / p.r_loss + 1.0 / zt)) * k_a;
    b.sensing = std::norm(xi) * transposition * electrical;

    // Cross term of the amplifier voltage noise between back action and sensing error.
    const double reactive_force = mech.stiffness - p.mass * omega * omega;
    b.interference = -8.0 * ra * reactive_force * k_a / (wt * std::sqrt(zf2));
    return b;
}

} // namespace coldamp
