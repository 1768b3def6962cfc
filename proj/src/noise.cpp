#include "coldamp/noise.hpp"

#include <cmath>

#include "coldamp/error.hpp"

namespace coldamp {

void NoiseLine::validate() const {
    if (!(impedance > 0.0) || !std::isfinite(impedance))
        throw DomainError("noise line '" + label + "': impedance must be positive");
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw DomainError("noise line '" + label + "': temperature must be >= 0");
}

double x_coth(double x) {
    if (x > 30.0) return x;
    if (x < 1e-8) return 1.0 + x * x / 3.0;
    return x / std::tanh(x);
}

EffectiveTemperature effective_temperature(double temperature, double omega) {
    if (omega == 0.0 || !std::isfinite(omega))
        throw DomainError("effective temperature is undefined at zero frequency");
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw DomainError("temperature must be finite and >= 0");

    const double half_quantum = 0.5 * kHbar * std::abs(omega);
    if (temperature == 0.0) return {half_quantum};

    // k T * x coth(x) with x = hbar|w| / 2kT; equals (hbar|w|/2) coth(x).
    const double thermal = kBoltzmann * temperature;
    return {thermal * x_coth(half_quantum / thermal)};
}

double input_spectrum(const NoiseLine& line, double omega) {
    line.validate();
    const auto theta = effective_temperature(line.temperature, omega);
    return theta.energy_per_mode / (kHbar * std::abs(omega));
}

double quadrature_spectrum(const NoiseLine& line, double carrier_omega) {
    if (!(carrier_omega > 0.0))
        throw DomainError("carrier frequency must be positive");
    line.validate();
    const auto theta = effective_temperature(line.temperature, carrier_omega);
    return 2.0 * theta.energy_per_mode / (kHbar * carrier_omega);
}

} // namespace coldamp
