#include "coldamp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "coldamp/budget.hpp"
#include "coldamp/draws.hpp"
#include "coldamp/sensor.hpp"
#include "coldamp/sensor_network.hpp"
#include "coldamp/servo.hpp"

namespace coldamp {

namespace {

constexpr std::array<Line, 4> kQuadrature2{Line::a2, Line::b2, Line::r2, Line::l2};

double worst(double a, double b) { return std::isnan(b) ? b : std::max(a, b); }

} // namespace

OracleAgreement oracle_agreement(const InstrumentParams& center, double omega, std::size_t draws,
                                 std::size_t frequencies, std::uint64_t seed, Fault fault) {
    std::mt19937_64 rng(seed);
    OracleAgreement out;
    for (std::size_t d = 0; d < draws; ++d) {
        const auto p = random_instrument(center, omega, rng);
        for (double w : frequency_span(omega, frequencies, 2.0)) {
            const auto sol = solve_sensor(p, w);
            const cplx xi = mechanical_impedance(p, w).value;
            auto lambda = sol.velocity();
            for (auto& v : lambda.values) v *= xi;
            auto mu = estimator_coefficients(p, w);
            if (fault == Fault::mu_l2_sign) mu[Line::l2] = -mu[Line::l2];

            out.lambda_deviation = worst(out.lambda_deviation,
                                         max_relative_deviation(lambda, free_mass_coefficients(p, w)));
            out.mu_deviation = worst(out.mu_deviation, max_relative_deviation(sol.estimator(), mu));
            out.max_condition = std::max(out.max_condition, sol.result.condition);
            ++out.points;
        }
    }
    return out;
}

double qnd_isolation(const InstrumentParams& p, double omega) {
    const auto v = solve_sensor(p, omega).velocity();
    double leak = 0.0;
    for (Line l : kQuadrature2) leak = std::max(leak, std::abs(v[l]));
    return leak / v.max_abs();
}

double toy_commutator_deviation(double omega) {
    double dev = 0.0;
    for (const auto& net : {build_matched_junction(50.0, omega), build_open_line(50.0, omega),
                            build_parallel_junction({50.0, 75.0, 300.0, 1e4}, omega),
                            build_series_reactance(50.0, 120.0, 35.0, omega),
                            build_series_reactance(1e3, 10.0, -4e3, omega)})
        dev = std::max(dev, check_commutators(solve(net)));
    return dev;
}

double sensor_passive_commutator_deviation(const InstrumentParams& p, double omega) {
    return check_commutators(solve_sensor(p, omega).result, passive_output_labels());
}

double sensor_full_commutator_deviation(const InstrumentParams& p, double omega) {
    return check_commutators(solve_sensor(p, omega).result);
}

cplx damping_gain(const InstrumentParams& p, double omega, double ratio) {
    return gain_for_impedance(p, cplx(ratio * p.mechanics_at(omega).damping, 0.0), omega);
}

double finite_gain_velocity_deviation(const InstrumentParams& p, double omega, cplx gain) {
    return max_relative_deviation(solve_sensor(p, omega, gain).velocity(), cold_damped_velocity(p, omega));
}

CoefficientSet extrapolated_velocity(const InstrumentParams& p, double omega, cplx gain) {
    const auto open = solve_sensor(p, omega);
    const auto s1 = solve_sensor(p, omega, gain);
    const auto s2 = solve_sensor(p, omega, 2.0 * gain);
    const cplx c = (1.0 / s1.velocity_drive() - 1.0 / open.velocity_drive()) / gain;
    const auto v1 = s1.velocity();
    const auto v2 = s2.velocity();
    CoefficientSet v;
    for (Line l : kAllLines) {
        const cplx w1 = v1[l] / s1.velocity_drive();
        const cplx w2 = v2[l] / s2.velocity_drive();
        v[l] = (w2 - w1) / (gain * c);
    }
    return v;
}

double extrapolated_velocity_deviation(const InstrumentParams& p, double omega, cplx gain) {
    return max_relative_deviation(extrapolated_velocity(p, omega, gain), cold_damped_velocity(p, omega));
}

double finite_gain_estimator_deviation(const InstrumentParams& p, double omega, cplx gain) {
    return max_relative_deviation(solve_sensor(p, omega, gain).estimator(), estimator_coefficients(p, omega));
}

double closed_loop_estimator_deviation(const InstrumentParams& p, double omega) {
    return max_relative_deviation(cold_damped_estimator(p, omega), estimator_coefficients(p, omega));
}

double decomposition_deviation(const InstrumentParams& center, double omega, std::size_t draws,
                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double dev = 0.0;
    for (std::size_t d = 0; d < draws; ++d) {
        const auto p = random_instrument(center, omega, rng);
        const auto b = sensor_noise_spectrum(p, omega);
        dev = worst(dev, std::abs(b.components_sum() - b.total) / b.total);
    }
    return dev;
}

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

std::vector<std::string> VerifyReport::failed() const {
    std::vector<std::string> names;
    for (const auto& c : checks)
        if (!c.passed()) names.push_back(c.name);
    return names;
}

std::string VerifyReport::text() const {
    std::string out = header + "\n";
    char buf[256];
    for (const auto& c : checks) {
        if (c.gated)
            std::snprintf(buf, sizeof buf, "%-28s max_dev=%.3e  tol=%.1e  %s", c.name.c_str(), c.deviation,
                          c.tolerance, c.passed() ? "PASS" : "FAIL");
        else
            std::snprintf(buf, sizeof buf, "%-28s max_dev=%.3e  informational", c.name.c_str(), c.deviation);
        out += buf;
        if (!c.note.empty()) out += "  # " + c.note;
        out += "\n";
    }
    out += passed() ? "result: PASS\n" : "result: FAIL (" + std::to_string(failed().size()) + " check(s))\n";
    return out;
}

VerifyReport run_verification(const Config& config, const VerifyOptions& options) {
    const auto& p = config.params;
    const double omega = config.omega;
    const double tol = options.tolerance;
    VerifyReport r;

    char buf[256];
    std::snprintf(buf, sizeof buf, "coldamp verify  config=%s  seed=%llu  draws=%zu  tol=%.1e",
                  config_digest_hex(config).c_str(), static_cast<unsigned long long>(options.seed), options.draws,
                  tol);
    r.header = buf;

    const auto oracle = oracle_agreement(p, omega, options.draws, 10, options.seed, options.fault);
    std::snprintf(buf, sizeof buf, "%zu points, worst condition %.2e", oracle.points, oracle.max_condition);
    r.checks.push_back({"oracle_lambda", oracle.lambda_deviation, tol, true, buf});
    r.checks.push_back({"oracle_mu", oracle.mu_deviation, tol, true, buf});

    double qnd = 0.0;
    for (double w : frequency_span(omega, 10, 2.0)) qnd = std::max(qnd, qnd_isolation(p, w));
    r.checks.push_back({"qnd_isolation", qnd, std::min(tol, 1e-12), true, "quadrature-2 inputs vs velocity"});

    double toys = 0.0;
    for (double w : {1e3, -1e3, 2.0 * p.carrier_omega}) toys = std::max(toys, toy_commutator_deviation(w));
    r.checks.push_back({"commutators_toy_networks", toys, tol, true, ""});

    double passive = 0.0, full = 0.0;
    for (double w : frequency_span(omega, 10, 2.0)) {
        passive = std::max(passive, sensor_passive_commutator_deviation(p, w));
        full = std::max(full, sensor_full_commutator_deviation(p, w));
    }
    r.checks.push_back({"commutators_sensor_passive", passive, tol, true, "outgoing m, l1, l2"});
    r.checks.push_back({"commutators_sensor_detection", full, tol, false,
                        "outgoing r lines; not preserved by the ideal-amplifier estimator"});

    double loop = 0.0, finite = 0.0, limit = 0.0, identity = 0.0;
    for (double w : frequency_span(omega, 10, 2.0)) {
        const cplx g = damping_gain(p, w, 1e6);
        loop = std::max(loop, closed_loop_estimator_deviation(p, w));
        finite = std::max(finite, finite_gain_estimator_deviation(p, w, g));
        limit = std::max(limit, extrapolated_velocity_deviation(p, w, g));
    }
    for (double w : frequency_span(omega, 31, 3.0)) identity = std::max(identity, sensing_error_identity(p, w));
    r.checks.push_back({"loop_invariance_closed_form", loop, tol, true, ""});
    r.checks.push_back({"loop_invariance_finite_gain", finite, tol, true, "H_me = 1e6 H_m"});
    r.checks.push_back({"infinite_gain_limit", limit, tol, true, "rational extrapolation from H_me = 1e6 H_m"});
    r.checks.push_back({"sensing_error_identity", identity, tol, true, "3 decades"});

    r.checks.push_back({"decomposition", decomposition_deviation(p, omega, options.draws, options.seed + 1), tol,
                        true, ""});

    const auto m = optimal_matching(p, omega);
    r.checks.push_back({"matching_minimizer", std::max(m.location_residual, m.value_residual),
                        std::max(tol, 1e-6), true, "golden-section vs closed-form optimum"});
    return r;
}

} // namespace coldamp
