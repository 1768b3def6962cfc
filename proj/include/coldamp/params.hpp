#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coldamp {

using cplx = std::complex<double>;

/// Input noise lines of the accelerometer network, in canonical port order.
/// Electrical lines appear as their two slow quadratures.
enum class Line : std::size_t { m, a1, a2, b1, b2, r1, r2, l1, l2 };

inline constexpr std::size_t kLineCount = 9;
inline constexpr std::array<Line, kLineCount> kAllLines{
    Line::m, Line::a1, Line::a2, Line::b1, Line::b2, Line::r1, Line::r2, Line::l1, Line::l2};

std::string_view label(Line line);
std::optional<Line> line_from_label(std::string_view label);

/// Per-frequency replacement of the stiffness and damping (exact frequency match).
struct MechanicalOverride {
    double omega = 0.0;
    double stiffness = 0.0;
    double damping = 0.0;

    bool operator==(const MechanicalOverride&) const = default;
};

struct Mechanics {
    double stiffness;
    double damping;
};

/// One translation channel of the capacitive accelerometer. SI units throughout;
/// temperatures are physical temperatures in kelvin.
struct InstrumentParams {
    double mass = 0.0;                  // M, kg
    double stiffness = 0.0;             // K, N/m
    double damping = 0.0;               // H_m, kg/s
    double coupling = 0.0;              // kappa_t, C/m
    double carrier_omega = 0.0;         // omega_t, rad/s
    double r_loss = 0.0;                // R_l, ohm
    double r_detect = 0.0;              // R_r, ohm
    double r_amp = 0.0;                 // R_a, ohm
    double c_feedback = 0.0;            // C_f, F
    double c_transducer = 0.0;          // C_t, F
    double theta_m = 0.0;               // mechanical line, K
    double theta_a = 0.0;               // amplifier (a and b lines), K
    double theta_l = 0.0;               // loss line, K
    double theta_r = 0.0;               // detection line, K
    std::vector<MechanicalOverride> overrides;

    /// Throws DomainError naming the first offending field.
    void validate() const;

    Mechanics mechanics_at(double omega) const;

    /// Z_f = 1/(-i omega_t C_f), purely reactive.
    cplx feedback_impedance() const;

    /// R_m = H_m / kappa_t^2 at the given frequency.
    double mechanical_resistance(double omega) const;

    bool operator==(const InstrumentParams&) const = default;
};

/// Parameter set of the space-mission instrument together with its reference
/// mechanical frequency 2*pi*5e-4 rad/s.
struct ReferenceInstrument {
    InstrumentParams params;
    double omega;
};
ReferenceInstrument microscope_reference();

/// Complex coefficient per input line (units depend on the observable).
struct CoefficientSet {
    std::array<cplx, kLineCount> values{};

    cplx& operator[](Line l) { return values[static_cast<std::size_t>(l)]; }
    const cplx& operator[](Line l) const { return values[static_cast<std::size_t>(l)]; }

    double max_abs() const;
};

/// Largest entry-wise relative deviation of `got` from `want`. Entries where
/// `want` is zero are measured against the largest entry of `want`.
double max_relative_deviation(const CoefficientSet& got, const CoefficientSet& want);

} // namespace coldamp
