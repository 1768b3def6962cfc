#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "coldamp/commands.hpp"

using namespace coldamp;

namespace {

const std::map<std::string, Spacing> kSpacing{{"lin", Spacing::linear}, {"log", Spacing::logarithmic}};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noise budget of a cold-damped capacitive accelerometer"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::string config = "configs/microscope.cfg";
    std::string out;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config, "Parameter file")->capture_default_str();
        sub->add_option("--out", out, "Output file (default stdout)");
    };

    BudgetOptions budget;
    double freq_min = 0.0, freq_max = 0.0;
    auto* b = app.add_subcommand("budget", "Noise budget over a frequency grid");
    common(b);
    auto* fmin = b->add_option("--freq-min", freq_min, "Lowest frequency, Hz");
    auto* fmax = b->add_option("--freq-max", freq_max, "Highest frequency, Hz");
    b->add_option("--points", budget.points, "Grid points")->capture_default_str();
    b->add_option("--spacing", budget.spacing, "Grid spacing")->transform(CLI::CheckedTransformer(kSpacing));

    SweepOptions sweep;
    auto* s = app.add_subcommand("sweep", "Noise budget against one parameter at the analysis frequency");
    common(s);
    s->add_option("--param", sweep.param, "Parameter name (M, K, H_m, kappa_t, R_a, Z_f, ...)")->required();
    s->add_option("--from", sweep.from, "First value, SI units")->required();
    s->add_option("--to", sweep.to, "Last value, SI units")->required();
    s->add_option("--points", sweep.points, "Grid points")->capture_default_str();
    s->add_option("--spacing", sweep.spacing, "Grid spacing")->transform(CLI::CheckedTransformer(kSpacing));

    OptimizeOptions optimize;
    double delta = 0.0;
    auto* o = app.add_subcommand("optimize", "Optimal amplifier matching R_a/R_m");
    common(o);
    auto* delta_opt = o->add_option("--delta", delta, "Override the reactive ratio Delta");

    VerifyCommandOptions verify;
    std::string fault;
    auto* v = app.add_subcommand("verify", "Cross-check closed forms against the network solver");
    common(v);
    v->add_option("--tol", verify.verify.tolerance, "Tolerance")->capture_default_str();
    v->add_option("--draws", verify.verify.draws, "Random parameter draws")->capture_default_str();
    v->add_option("--seed", verify.verify.seed, "Random seed")->capture_default_str();
    v->add_option("--inject-fault", fault)->group("")->check(CLI::IsMember({"mu_l2_sign"}));

    auto* d = app.add_subcommand("dump-config", "Print the canonical form of a parameter file");
    common(d);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    std::unique_ptr<std::ofstream> file;
    if (!out.empty()) {
        file = std::make_unique<std::ofstream>(out, std::ios::binary);
        if (!*file) {
            std::cerr << "cannot open output file " << out << '\n';
            return exit_config;
        }
    }
    Streams streams{file ? static_cast<std::ostream&>(*file) : std::cout, file ? std::cout : std::cerr};

    if (*b) {
        budget.config = config;
        if (*fmin) budget.freq_min_hz = freq_min;
        if (*fmax) budget.freq_max_hz = freq_max;
        return cmd_budget(budget, streams);
    }
    if (*s) {
        sweep.config = config;
        return cmd_sweep(sweep, streams);
    }
    if (*o) {
        optimize.config = config;
        if (*delta_opt) optimize.delta = delta;
        return cmd_optimize(optimize, streams);
    }
    if (*v) {
        verify.config = config;
        if (fault == "mu_l2_sign") verify.verify.fault = Fault::mu_l2_sign;
        return cmd_verify(verify, streams);
    }
    return cmd_dump_config(config, streams);
}
