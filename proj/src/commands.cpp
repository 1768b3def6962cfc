#include "coldamp/commands.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "coldamp/config.hpp"
#include "coldamp/error.hpp"
#include "coldamp/sensor.hpp"

namespace coldamp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string short_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

void write_rows(const std::vector<BudgetPoint>& points, const std::string& digest, std::ostream& out) {
    out << csv_header() << '\n';
    for (const auto& b : points) out << csv_row(b, digest) << '\n';
}

void write_warnings(const std::vector<BudgetPoint>& points, std::ostream& log) {
    for (const auto& b : points)
        for (const auto& w : b.warnings) log << "warning: " << w << '\n';
}

} // namespace

std::string format_number(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific, 11);
    return std::string(buf.data(), ptr);
}

std::string csv_header() {
    return "omega_rad_s,delta,sigma_vfr,sigma_vse,sigma_cross,sigma_ff,accel_sensitivity,config_digest,tool_version";
}

std::string sweep_csv_header() { return "parameter,parameter_value," + csv_header(); }

std::string csv_row(const BudgetPoint& b, const std::string& digest) {
    std::string row;
    for (double v : {b.omega, b.delta, b.sigma_vfr, b.sigma_vse, b.sigma_cross, b.sigma_ff, b.accel_sensitivity})
        row += format_number(v) + ',';
    return row + digest + ',' + kToolVersion;
}

int guarded(std::ostream& log, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const DomainError& e) {
        log << "invalid input: " << e.what() << '\n';
        return exit_config;
    } catch (const NumericalError& e) {
        log << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
}

int cmd_budget(const BudgetOptions& o, Streams s) {
    return guarded(s.log, [&] {
        const auto cfg = load_config(o.config);
        const double lo = o.freq_min_hz ? kTwoPi * *o.freq_min_hz : cfg.omega;
        const double hi = o.freq_max_hz ? kTwoPi * *o.freq_max_hz : (o.freq_min_hz ? lo : cfg.omega);
        const auto grid = make_grid(lo, hi, o.points, o.spacing);
        const auto points = sweep_frequency(cfg.params, grid);
        const auto digest = config_digest_hex(cfg);
        write_rows(points, digest, s.table);
        write_warnings(points, s.log);

        // Summary at the analysis frequency, with the open-loop decomposition.
        const auto ref = budget_point(cfg.params, cfg.omega);
        const auto parts = sensor_noise_spectrum(cfg.params, cfg.omega);
        s.log << "budget at Omega = " << format_number(cfg.omega) << " rad/s (" << short_number(cfg.omega / kTwoPi)
              << " Hz), config " << digest << '\n'
              << "  Sigma_FF            = " << format_number(ref.sigma_ff) << " N^2/Hz\n"
              << "  accel sensitivity   = " << format_number(ref.accel_sensitivity) << " m s^-2/sqrt(Hz)\n"
              << "  Langevin            = " << format_number(parts.langevin) << " N^2/Hz\n"
              << "  back action         = " << format_number(parts.back_action) << " N^2/Hz\n"
              << "  sensing             = " << format_number(parts.sensing) << " N^2/Hz\n"
              << "  interference        = " << format_number(parts.interference) << " N^2/Hz\n"
              << "  Delta               = " << short_number(ref.delta) << '\n';
        return int(exit_ok);
    });
}

int cmd_sweep(const SweepOptions& o, Streams s) {
    return guarded(s.log, [&] {
        const auto cfg = load_config(o.config);
        const auto grid = make_grid(o.from, o.to, o.points, o.spacing);
        const auto points = sweep_parameter(cfg.params, o.param, grid, cfg.omega);
        const auto digest = config_digest_hex(cfg);
        s.table << sweep_csv_header() << '\n';
        for (std::size_t i = 0; i < points.size(); ++i)
            s.table << o.param << ',' << format_number(grid[i]) << ',' << csv_row(points[i], digest) << '\n';
        write_warnings(points, s.log);
        s.log << "swept " << o.param << " over " << grid.size() << " points at Omega = "
              << format_number(cfg.omega) << " rad/s\n";
        return int(exit_ok);
    });
}

int cmd_optimize(const OptimizeOptions& o, Streams s) {
    return guarded(s.log, [&] {
        const auto cfg = load_config(o.config);
        const auto m = optimal_matching(cfg.params, cfg.omega, o.delta);
        const auto model = matching_model(cfg.params, cfg.omega, o.delta);
        const double current = cfg.params.r_amp / cfg.params.mechanical_resistance(cfg.omega);
        s.table << "delta," << format_number(model.delta) << '\n'
                << "ratio_current," << format_number(current) << '\n'
                << "ratio_opt," << format_number(m.ratio_opt) << '\n'
                << "sigma_opt," << format_number(m.sigma_opt) << '\n'
                << "langevin_part," << format_number(m.langevin_part) << '\n'
                << "detection_part," << format_number(m.detection_part) << '\n'
                << "ratio_numeric," << format_number(m.ratio_numeric) << '\n'
                << "location_residual," << format_number(m.location_residual) << '\n'
                << "value_residual," << format_number(m.value_residual) << '\n';
        s.log << "optimal R_a/R_m = " << format_number(m.ratio_opt) << " (R_a = "
              << short_number(m.ratio_opt * cfg.params.mechanical_resistance(cfg.omega)) << " ohm), Sigma_FF = "
              << format_number(m.sigma_opt) << " N^2/Hz; minimizer cross-check residual "
              << short_number(std::max(m.location_residual, m.value_residual)) << '\n';
        return int(exit_ok);
    });
}

int cmd_verify(const VerifyCommandOptions& o, Streams s) {
    return guarded(s.log, [&] {
        if (!(o.verify.tolerance > 0.0)) throw DomainError("--tol must be positive");
        if (o.verify.draws < 1) throw DomainError("--draws must be at least 1");
        const auto cfg = load_config(o.config);
        const auto report = run_verification(cfg, o.verify);
        s.table << report.text();
        if (report.passed()) return int(exit_ok);
        for (const auto& name : report.failed()) s.log << "verification failed: " << name << '\n';
        return int(exit_verify);
    });
}

int cmd_dump_config(const std::string& config, Streams s) {
    return guarded(s.log, [&] {
        s.table << dump_config(load_config(config));
        return int(exit_ok);
    });
}

} // namespace coldamp
