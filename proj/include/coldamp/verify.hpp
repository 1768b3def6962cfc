#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coldamp/config.hpp"
#include "coldamp/params.hpp"

namespace coldamp {

/// Deliberate corruption of one closed form, used to prove the checks can fail.
enum class Fault { none, mu_l2_sign };

struct OracleAgreement {
    double lambda_deviation = 0.0;
    double mu_deviation = 0.0;
    double max_condition = 0.0;
    std::size_t points = 0;
};

/// Closed-form lambda and mu against the solved network over `draws` random
/// instruments (+-2 decades around `center`) and `frequencies` points spanning
/// two decades around omega.
OracleAgreement oracle_agreement(const InstrumentParams& center, double omega, std::size_t draws,
                                 std::size_t frequencies, std::uint64_t seed, Fault fault = Fault::none);

/// Largest velocity response to a quadrature-2 input relative to the largest entry of the row.
double qnd_isolation(const InstrumentParams& p, double omega);

/// Worst commutator deviation over the toy networks at omega.
double toy_commutator_deviation(double omega);

/// Commutator deviation of the sensor restricted to the passive outgoing lines (m, l).
double sensor_passive_commutator_deviation(const InstrumentParams& p, double omega);

/// Commutator deviation of the full sensor S matrix including the detection line.
double sensor_full_commutator_deviation(const InstrumentParams& p, double omega);

/// Gain whose effective damping is `ratio` times H_m (purely dissipative servo).
cplx damping_gain(const InstrumentParams& p, double omega, double ratio);

/// Relative deviation of the finite-gain solved velocity row from the
/// infinite-gain closed form at the given gain.
double finite_gain_velocity_deviation(const InstrumentParams& p, double omega, cplx gain);

/// Infinite-gain velocity row extrapolated from the solved network alone. The
/// loop equations are linear in G, so V_alpha / V_F = lambda_alpha - G rho_alpha and
/// 1 / V_F = Xi_m + G c; two finite gains and the open loop fix rho and c, and the
/// limit is -rho / c.
CoefficientSet extrapolated_velocity(const InstrumentParams& p, double omega, cplx gain);

/// Deviation of extrapolated_velocity from the infinite-gain closed form.
double extrapolated_velocity_deviation(const InstrumentParams& p, double omega, cplx gain);

/// Closed-loop estimator from the finite-gain network, normalized to the
/// external force, against the open-loop closed form.
double finite_gain_estimator_deviation(const InstrumentParams& p, double omega, cplx gain);

/// Closed-loop closed form Xi_m (V_fr - V_cd) against the open-loop closed form.
double closed_loop_estimator_deviation(const InstrumentParams& p, double omega);

/// Worst |components_sum - total| / total over random draws.
double decomposition_deviation(const InstrumentParams& center, double omega, std::size_t draws,
                               std::uint64_t seed);

struct CheckResult {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool gated = true;  // informational checks never fail the run
    std::string note;

    bool passed() const { return !gated || deviation < tolerance; }
};

struct VerifyOptions {
    double tolerance = 1e-8;
    std::size_t draws = 200;
    std::uint64_t seed = 1;
    Fault fault = Fault::none;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    std::string header;

    bool passed() const;
    std::vector<std::string> failed() const;
    std::string text() const;
};

VerifyReport run_verification(const Config& config, const VerifyOptions& options);

} // namespace coldamp
