#include "coldamp/budget.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include "coldamp/error.hpp"
#include "coldamp/noise.hpp"
#include "coldamp/sensor.hpp"

namespace coldamp {

namespace {

void require_frequency(double omega) {
    if (omega == 0.0 || !std::isfinite(omega))
        throw DomainError("mechanical frequency must be finite and non-zero");
}

std::string format_value(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

double reactance_ratio(const InstrumentParams& p, double omega) {
    require_frequency(omega);
    const auto mech = p.mechanics_at(omega);
    return (mech.stiffness / omega - p.mass * omega) / mech.damping;
}

BudgetPoint budget_point(const InstrumentParams& p, double omega) {
    require_frequency(omega);
    p.validate();
    if (p.coupling == 0.0) throw DomainError("noise budget requires a non-zero coupling kappa_t");

    const auto mech = p.mechanics_at(omega);
    const double h = mech.damping;
    const double wt = p.carrier_omega;
    const double delta = reactance_ratio(p, omega);
    const double rm = p.mechanical_resistance(omega);
    const double zf = std::abs(p.feedback_impedance());
    const cplx zt = transducer_impedance(p, omega);
    const double ra = p.r_amp;

    const double k_m = effective_temperature(p.theta_m, omega).energy_per_mode;
    const double k_a = effective_temperature(p.theta_a, wt).energy_per_mode;
    const double k_l = effective_temperature(p.theta_l, wt).energy_per_mode;
    const double k_r = effective_temperature(p.theta_r, wt).energy_per_mode;

    const double reactive = 1.0 + delta * delta;
    const double ratio = omega / wt;

    BudgetPoint b;
    b.omega = omega;
    b.delta = delta;
    b.sigma_vfr = (2.0 * k_m + 8.0 * (ra / rm) * k_a) / (h * reactive);
    b.sigma_vse = ratio * ratio * (rm / h) *
                  (k_l / p.r_loss + p.r_detect * k_r / (4.0 * zf * zf) +
                   2.0 * ra * (1.0 / (zf * zf) + 1.0 / (ra * ra) + std::norm(1.0 / p.r_loss + 1.0 / zt)) * k_a);
    b.sigma_cross = -8.0 * (ra / zf) * ratio * delta / reactive * k_a / h;
    b.sigma_ff = h * h * reactive * (b.sigma_vfr + b.sigma_vse + b.sigma_cross);
    b.accel_sensitivity = std::sqrt(b.sigma_ff) / p.mass;

    if (wt / std::abs(omega) <= 1e3)
        b.warnings.push_back("carrier to mechanical frequency ratio " + format_value(wt / std::abs(omega)) +
                             " is not >> 1 (<= 1e3); quadrature spectra are approximate");
    if (!(b.sigma_ff >= 0.0))
        b.warnings.push_back("negative total spectrum at omega = " + format_value(omega));
    return b;
}

double MatchingModel::langevin() const { return 2.0 * damping * energy_m; }

double MatchingModel::back_action(double ratio) const { return 8.0 * damping * ratio * energy_a; }

double MatchingModel::sensing(double ratio) const {
    const double r = omega / carrier_omega;
    return 2.0 * damping * (1.0 + delta * delta) * r * r * energy_a / ratio;
}

double MatchingModel::optimal_ratio() const {
    return std::sqrt(1.0 + delta * delta) * std::abs(omega) / (2.0 * carrier_omega);
}

MatchingModel matching_model(const InstrumentParams& p, double omega, std::optional<double> delta) {
    require_frequency(omega);
    p.validate();
    MatchingModel m;
    m.damping = p.mechanics_at(omega).damping;
    m.energy_m = effective_temperature(p.theta_m, omega).energy_per_mode;
    m.energy_a = effective_temperature(p.theta_a, p.carrier_omega).energy_per_mode;
    m.delta = delta ? *delta : reactance_ratio(p, omega);
    m.omega = omega;
    m.carrier_omega = p.carrier_omega;
    return m;
}

double simplified_budget(const InstrumentParams& p, double omega) {
    const auto m = matching_model(p, omega);
    return m.total(p.r_amp / p.mechanical_resistance(omega));
}

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tolerance) {
    if (!(lo < hi)) throw DomainError("golden-section bracket must satisfy lo < hi");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tolerance) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        if (c >= d) break;
    }
    return (a + b) / 2.0;
}

MatchingResult optimal_matching(const InstrumentParams& p, double omega, std::optional<double> delta) {
    const auto m = matching_model(p, omega, delta);
    MatchingResult r;
    r.ratio_opt = m.optimal_ratio();
    r.langevin_part = m.langevin();
    r.detection_part = m.detection(r.ratio_opt);
    r.sigma_opt = r.langevin_part + r.detection_part;

    // The Langevin part does not depend on the ratio and would swamp the
    // detection part in double precision, so the search minimizes the latter.
    const double t = golden_section_minimize([&m](double t) { return m.detection(std::pow(10.0, t)); },
                                             -12.0, 0.0);
    r.ratio_numeric = std::pow(10.0, t);
    r.sigma_numeric = m.total(r.ratio_numeric);
    r.location_residual = std::abs(r.ratio_numeric - r.ratio_opt) / r.ratio_opt;
    r.value_residual = std::abs(m.detection(r.ratio_numeric) - r.detection_part) / r.detection_part;
    return r;
}

std::vector<double> make_grid(double lo, double hi, std::size_t points, Spacing spacing) {
    if (points == 0) throw DomainError("grid must contain at least one point");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("grid bounds must be finite");
    if (spacing == Spacing::logarithmic && !(lo > 0.0))
        throw DomainError("logarithmic grid requires positive bounds");
    if (points == 1) {
        if (lo != hi) throw DomainError("a single-point grid requires equal bounds");
        return {lo};
    }
    if (!(lo < hi)) throw DomainError("grid bounds must be strictly increasing");

    std::vector<double> g(points);
    const double n = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / n;
        g[i] = spacing == Spacing::linear ? lo + (hi - lo) * t
                                          : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * t);
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

const std::vector<std::string>& sweepable_parameters() {
    static const std::vector<std::string> names{
        "M", "K", "H_m", "kappa_t", "omega_t", "R_l", "R_r", "R_a", "Z_f", "C_f", "Z_t", "C_t",
        "Theta_m", "Theta_a", "Theta_l", "Theta_r"};
    return names;
}

void set_parameter(InstrumentParams& p, std::string_view name, double value, double omega) {
    if (name == "M") p.mass = value;
    else if (name == "K") p.stiffness = value;
    else if (name == "H_m") p.damping = value;
    else if (name == "kappa_t") p.coupling = value;
    else if (name == "omega_t") p.carrier_omega = value;
    else if (name == "R_l") p.r_loss = value;
    else if (name == "R_r") p.r_detect = value;
    else if (name == "R_a") p.r_amp = value;
    else if (name == "Z_f") p.c_feedback = 1.0 / (p.carrier_omega * value);
    else if (name == "C_f") p.c_feedback = value;
    else if (name == "Z_t") {
        require_frequency(omega);
        p.c_transducer = 1.0 / (2.0 * std::abs(omega) * value);
    } else if (name == "C_t") p.c_transducer = value;
    else if (name == "Theta_m") p.theta_m = value;
    else if (name == "Theta_a") p.theta_a = value;
    else if (name == "Theta_l") p.theta_l = value;
    else if (name == "Theta_r") p.theta_r = value;
    else throw DomainError("unknown sweep parameter '" + std::string(name) + "'");
}

std::size_t sweep_threads() {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("COLDAMP_THREADS")) {
        std::size_t cap = 0;
        const char* end = env + std::char_traits<char>::length(env);
        auto [ptr, ec] = std::from_chars(env, end, cap);
        if (ec == std::errc() && ptr == end && cap > 0) n = std::min(n, cap);
    }
    return n;
}

namespace {

template <class Eval>
std::vector<BudgetPoint> run_grid(const std::vector<double>& grid, std::size_t threads, Eval eval) {
    if (grid.empty()) throw DomainError("grid must contain at least one point");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw DomainError("grid must be strictly increasing");

    std::vector<BudgetPoint> out(grid.size());
    std::vector<std::exception_ptr> errors(grid.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            try {
                out[i] = eval(grid[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, grid.size());
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
        work();
    }

    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!errors[i]) continue;
        const std::string where = " (grid value " + format_value(grid[i]) + ")";
        try {
            std::rethrow_exception(errors[i]);
        } catch (const NumericalError& e) {
            throw NumericalError(e.what() + where, e.omega(), e.condition());
        } catch (const DomainError& e) {
            throw DomainError(e.what() + where);
        }
    }
    return out;
}

} // namespace

std::vector<BudgetPoint> sweep_frequency(const InstrumentParams& p, const std::vector<double>& omegas,
                                         std::size_t threads) {
    return run_grid(omegas, threads, [&p](double w) { return budget_point(p, w); });
}

std::vector<BudgetPoint> sweep_parameter(const InstrumentParams& p, std::string_view name,
                                         const std::vector<double>& values, double omega,
                                         std::size_t threads) {
    const auto& names = sweepable_parameters();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw DomainError("unknown sweep parameter '" + std::string(name) + "'");
    return run_grid(values, threads, [&](double v) {
        InstrumentParams q = p;
        set_parameter(q, name, v, omega);
        return budget_point(q, omega);
    });
}

} // namespace coldamp
