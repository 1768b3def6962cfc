#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coldamp/budget.hpp"
#include "coldamp/verify.hpp"

namespace coldamp {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { exit_ok = 0, exit_config = 1, exit_verify = 2, exit_numerical = 3 };

/// Output destinations. `table` receives the CSV or report, `log` the summary and diagnostics.
struct Streams {
    std::ostream& table;
    std::ostream& log;
};

struct BudgetOptions {
    std::string config;
    std::optional<double> freq_min_hz;  // defaults to the analysis frequency of the config
    std::optional<double> freq_max_hz;
    std::size_t points = 1;
    Spacing spacing = Spacing::logarithmic;
};

struct SweepOptions {
    std::string config;
    std::string param;
    double from = 0.0;
    double to = 0.0;
    std::size_t points = 11;
    Spacing spacing = Spacing::logarithmic;
};

struct OptimizeOptions {
    std::string config;
    std::optional<double> delta;
};

struct VerifyCommandOptions {
    std::string config;
    VerifyOptions verify;
};

/// Fixed CSV header of budget; sweep prepends parameter,parameter_value.
std::string csv_header();
std::string sweep_csv_header();
std::string csv_row(const BudgetPoint& b, const std::string& digest);
/// Scientific notation, 12 significant digits, locale independent.
std::string format_number(double v);

// Each command returns an exit code; configuration and numerical errors are
// reported on `log` and mapped to their codes.
int cmd_budget(const BudgetOptions& o, Streams s);
int cmd_sweep(const SweepOptions& o, Streams s);
int cmd_optimize(const OptimizeOptions& o, Streams s);
int cmd_verify(const VerifyCommandOptions& o, Streams s);
int cmd_dump_config(const std::string& config, Streams s);

/// Runs `body` and maps ConfigError/DomainError to 1, NumericalError to 3.
int guarded(std::ostream& log, const std::function<int()>& body);

} // namespace coldamp
