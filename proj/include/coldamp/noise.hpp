#pragma once

#include <string>

namespace coldamp {

// CODATA 2018 exact values.
inline constexpr double kHbar = 1.054571817e-34;      // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J/K

/// A dissipative or amplifier noise port. `impedance` is in ohms for electrical
/// lines and kg/s for the mechanical line. `conjugated` marks the amplifier
/// current-noise field, which enters the circuit as b^in[-omega].
struct NoiseLine {
    std::string label;
    double impedance = 1.0;
    double temperature = 0.0;
    bool conjugated = false;

    void validate() const;
};

/// Energy per mode k_B*Theta at a given frequency, in joules.
struct EffectiveTemperature {
    double energy_per_mode = 0.0;

    double kelvin() const { return energy_per_mode / kBoltzmann; }
};

/// x*coth(x) for x >= 0, with the small- and large-argument branches
/// (Laurent series below 1e-8, asymptote above 30).
double x_coth(double x);

/// (hbar|w|/2) coth(hbar|w|/2kT). Exactly hbar|w|/2 at T = 0.
/// Throws DomainError for w == 0 or T < 0.
EffectiveTemperature effective_temperature(double temperature, double omega);

/// Symmetrized input spectrum (1/2)coth(hbar|w|/2kT) of a thermal line; always >= 1/2.
double input_spectrum(const NoiseLine& line, double omega);

/// Spectrum of either slow quadrature of a line around the carrier:
/// 2 k_B Theta(omega_t) / (hbar omega_t). Requires omega_t > 0.
double quadrature_spectrum(const NoiseLine& line, double carrier_omega);

} // namespace coldamp
