#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coldamp/params.hpp"

namespace coldamp {

/// Rewritten noise budget at one frequency. Velocity spectra in (m/s)^2/Hz.
struct BudgetPoint {
    double omega = 0.0;              // rad/s
    double delta = 0.0;              // reactive impedance ratio (K/Omega - M Omega)/H_m
    double sigma_vfr = 0.0;          // free-running velocity
    double sigma_vse = 0.0;          // sensing error
    double sigma_cross = 0.0;        // interference, signed
    double sigma_ff = 0.0;           // N^2/Hz
    double accel_sensitivity = 0.0;  // m s^-2 / sqrt(Hz)
    std::vector<std::string> warnings;
};

/// Delta = (K/Omega - M Omega) / H_m.
double reactance_ratio(const InstrumentParams& p, double omega);

/// Throws DomainError for Omega == 0; warns when omega_t/|Omega| <= 1e3.
BudgetPoint budget_point(const InstrumentParams& p, double omega);

/// Lossless-limit budget as a function of x = R_a/R_m:
/// 2 H k Theta_m + 8 H x k Theta_a + 2 H (1 + Delta^2) (Omega/omega_t)^2 k Theta_a / x.
struct MatchingModel {
    double damping;        // H_m
    double energy_m;       // k Theta_m at Omega, J
    double energy_a;       // k Theta_a at omega_t, J
    double delta;
    double omega;
    double carrier_omega;

    double langevin() const;
    double back_action(double ratio) const;
    double sensing(double ratio) const;
    double detection(double ratio) const { return back_action(ratio) + sensing(ratio); }
    double total(double ratio) const { return langevin() + detection(ratio); }
    double optimal_ratio() const;
};

/// Delta defaults to the value computed from the mechanics; pass one to override it.
MatchingModel matching_model(const InstrumentParams& p, double omega,
                             std::optional<double> delta = std::nullopt);

/// simplified budget at the instrument's own ratio R_a kappa_t^2 / H_m.
double simplified_budget(const InstrumentParams& p, double omega);

struct MatchingResult {
    double ratio_opt = 0.0;
    double sigma_opt = 0.0;
    double langevin_part = 0.0;
    double detection_part = 0.0;
    double ratio_numeric = 0.0;      // golden-section minimizer
    double sigma_numeric = 0.0;
    double location_residual = 0.0;  // |ratio_numeric - ratio_opt| / ratio_opt
    double value_residual = 0.0;     // relative, on the detection part
};

MatchingResult optimal_matching(const InstrumentParams& p, double omega,
                                std::optional<double> delta = std::nullopt);

/// Golden-section search for the minimum of f on [lo, hi].
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tolerance = 1e-12);

enum class Spacing { linear, logarithmic };

/// `points` values from lo to hi inclusive. A single point requires lo == hi.
std::vector<double> make_grid(double lo, double hi, std::size_t points, Spacing spacing);

/// Names accepted by set_parameter.
const std::vector<std::string>& sweepable_parameters();

/// Sets one parameter by name. Z_f and Z_t are magnitudes converted to
/// capacitances (Z_t at the analysis frequency omega).
void set_parameter(InstrumentParams& p, std::string_view name, double value, double omega);

/// Worker count for sweeps: hardware concurrency capped by COLDAMP_THREADS.
std::size_t sweep_threads();

std::vector<BudgetPoint> sweep_frequency(const InstrumentParams& p, const std::vector<double>& omegas,
                                         std::size_t threads = sweep_threads());

std::vector<BudgetPoint> sweep_parameter(const InstrumentParams& p, std::string_view name,
                                         const std::vector<double>& values, double omega,
                                         std::size_t threads = sweep_threads());

} // namespace coldamp
