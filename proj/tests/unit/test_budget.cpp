#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

#include "coldamp/budget.hpp"
#include "coldamp/draws.hpp"
#include "coldamp/error.hpp"
#include "coldamp/noise.hpp"
#include "coldamp/sensor.hpp"
#include "coldamp/sensor_network.hpp"
#include "support.hpp"

using namespace coldamp;
using testing::rel;

namespace {

InstrumentParams lossless(InstrumentParams p) {
    p.r_loss = 1e40;
    p.r_detect = 1e-40;
    p.c_feedback = 1e-60;
    p.c_transducer = 1e-60;
    return p;
}

} // namespace

TEST_CASE("reference budget") {
    auto [p, w] = testing::reference();
    const auto b = budget_point(p, w);
    CHECK(rel(b.sigma_ff, 1.07690870195e-25) < 1e-10);
    CHECK(rel(b.accel_sensitivity, 1.21541804239e-12) < 1e-10);
    CHECK(b.delta == doctest::Approx(32.69).epsilon(1e-3));
    CHECK(b.warnings.empty());
    CHECK(b.sigma_cross < 0.0);
}

TEST_CASE("budget, closed-form estimator and solved network agree") {
    auto [p0, w0] = testing::reference();
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        const auto p = random_instrument(p0, w0, rng);
        for (double w : frequency_span(w0, 3, 2.0)) {
            const double from_budget = budget_point(p, w).sigma_ff;
            const double from_mu = sensor_noise_spectrum(p, w).total;
            const double from_network = quadratic_form(solve_sensor(p, w).estimator(), line_spectra(p, w));
            CHECK(rel(from_budget, from_mu) < 1e-9);
            CHECK(rel(from_network, from_mu) < 1e-9);
        }
    }
}

TEST_CASE("budget preconditions") {
    auto [p, w] = testing::reference();
    CHECK_THROWS_AS(budget_point(p, 0.0), DomainError);
    const auto near = budget_point(p, p.carrier_omega / 500.0);
    CHECK(near.warnings.size() == 1);
    p.coupling = 0.0;
    CHECK_THROWS_AS(budget_point(p, w), DomainError);
}

TEST_CASE("optimal matching at a large reactance ratio") {
    auto [p, w] = testing::reference();
    const auto r = optimal_matching(p, w, 100.0);
    CHECK(r.detection_part == doctest::Approx(1.1e-33).epsilon(0.05));
    CHECK(r.location_residual < 1e-6);
    CHECK(r.value_residual < 1e-10);
    CHECK(rel(r.sigma_opt, r.langevin_part + r.detection_part) < 1e-15);
}

TEST_CASE("matching ratio at resonance") {
    auto [p, w] = testing::reference();
    const auto m = matching_model(p, w, 0.0);
    CHECK(rel(m.optimal_ratio(), w / (2.0 * p.carrier_omega)) < 1e-15);
}

TEST_CASE("detection part scales with the amplifier temperature") {
    auto [p, w] = testing::reference();
    const auto base = optimal_matching(p, w, 10.0);
    p.theta_a *= 10.0;
    const auto hot = optimal_matching(p, w, 10.0);
    CHECK(hot.detection_part / base.detection_part == doctest::Approx(10.0).epsilon(1e-6));
    CHECK(hot.ratio_opt == doctest::Approx(base.ratio_opt));
}

TEST_CASE("back action equals sensing noise at the optimum") {
    auto [p, w] = testing::reference();
    for (double d : {0.0, 1.0, 32.0, 1e3}) {
        const auto m = matching_model(p, w, d);
        const double x = m.optimal_ratio();
        CHECK(rel(m.back_action(x), m.sensing(x)) < 1e-12);
        const double h = 1e-4 * x;
        const double slope = (m.detection(x + h) - m.detection(x - h)) / (2.0 * h);
        CHECK(std::abs(slope) * x / m.detection(x) < 1e-6);
        CHECK(m.detection(0.9 * x) > m.detection(x));
        CHECK(m.detection(1.1 * x) > m.detection(x));
    }
}

TEST_CASE("golden-section search") {
    CHECK(golden_section_minimize([](double x) { return (x - 0.3) * (x - 0.3); }, -1.0, 2.0) ==
          doctest::Approx(0.3).epsilon(1e-9));
    CHECK_THROWS_AS(golden_section_minimize([](double x) { return x; }, 1.0, 1.0), DomainError);
}

TEST_CASE("lossless limit reproduces the simplified budget") {
    auto [p0, w] = testing::reference();
    const auto p = lossless(p0);
    CHECK(rel(budget_point(p, w).sigma_ff, simplified_budget(p, w)) < 1e-9);
}

TEST_CASE("grids") {
    const auto lin = make_grid(1.0, 3.0, 5, Spacing::linear);
    CHECK(lin == std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0});
    const auto lg = make_grid(1.0, 1e4, 5, Spacing::logarithmic);
    CHECK(lg.front() == 1.0);
    CHECK(lg.back() == 1e4);
    CHECK(lg[2] == doctest::Approx(100.0));
    CHECK(make_grid(2.0, 2.0, 1, Spacing::linear) == std::vector<double>{2.0});
    CHECK_THROWS_AS(make_grid(1.0, 2.0, 0, Spacing::linear), DomainError);
    CHECK_THROWS_AS(make_grid(1.0, 2.0, 1, Spacing::linear), DomainError);
    CHECK_THROWS_AS(make_grid(2.0, 1.0, 3, Spacing::linear), DomainError);
    CHECK_THROWS_AS(make_grid(-1.0, 1.0, 3, Spacing::logarithmic), DomainError);
}

TEST_CASE("frequency sweep keeps grid order and is independent of the thread count") {
    auto [p, w] = testing::reference();
    const auto grid = make_grid(w / 100.0, w * 100.0, 64, Spacing::logarithmic);
    const auto one = sweep_frequency(p, grid, 1);
    const auto many = sweep_frequency(p, grid, 7);
    REQUIRE(one.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(one[i].omega == grid[i]);
        CHECK(one[i].sigma_ff == many[i].sigma_ff);
        CHECK(one[i].sigma_ff == budget_point(p, grid[i]).sigma_ff);
    }
}

TEST_CASE("thread count honours the environment") {
    setenv("COLDAMP_THREADS", "2", 1);
    CHECK(sweep_threads() <= 2);
    CHECK(sweep_threads() >= 1);
    unsetenv("COLDAMP_THREADS");
    CHECK(sweep_threads() >= 1);
}

TEST_CASE("sweep errors name the grid value") {
    auto [p, w] = testing::reference();
    CHECK_THROWS_AS(sweep_parameter(p, "nonsense", {1.0}, w), DomainError);
    try {
        sweep_parameter(p, "R_l", {-6.0, -5.0, 1.0, 10.0}, w, 3);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("grid value -6") != std::string::npos);
    }
    CHECK_THROWS_AS(sweep_frequency(p, {-w, 0.0}), DomainError);
    CHECK_THROWS_AS(sweep_frequency(p, {2.0 * w, w}), DomainError);
}

TEST_CASE("every sweepable parameter can be set") {
    auto [p0, w] = testing::reference();
    for (const auto& name : sweepable_parameters()) {
        auto p = p0;
        set_parameter(p, name, 2.0, w);
        CHECK_FALSE(p == p0);
    }
    auto p = p0;
    set_parameter(p, "Z_f", 1e6, w);
    CHECK(std::abs(p.feedback_impedance()) == doctest::Approx(1e6));
}

TEST_CASE("lossless budget is unimodal in the amplifier resistance") {
    auto [p0, w] = testing::reference();
    const auto p = lossless(p0);
    const auto grid = make_grid(1e-6, 1e8, 141, Spacing::logarithmic);
    const auto pts = sweep_parameter(p, "R_a", grid, w);
    std::size_t sign_changes = 0;
    for (std::size_t i = 2; i < pts.size(); ++i) {
        const bool before = pts[i - 1].sigma_ff < pts[i - 2].sigma_ff;
        const bool after = pts[i].sigma_ff < pts[i - 1].sigma_ff;
        if (before != after) ++sign_changes;
    }
    CHECK(sign_changes == 1);
}

TEST_CASE("monotone dependence on the resistive elements") {
    auto [p, w] = testing::reference();
    auto check = [&](const char* name, int direction, auto field) {
        const auto pts = sweep_parameter(p, name, make_grid(1e-3, 1e9, 49, Spacing::logarithmic), w);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            const double a = field(pts[i - 1]), b = field(pts[i]);
            const double tol = 1e-12 * std::abs(a);
            if (direction < 0) CHECK(b <= a + tol);
            else if (direction > 0) CHECK(b >= a - tol);
            else CHECK(std::abs(b - a) <= tol);
        }
    };
    const auto total = [](const BudgetPoint& b) { return b.sigma_ff; };
    check("R_l", -1, total);
    check("R_r", +1, total);
    check("Z_t", -1, total);
    // the interference term shrinks with |Z_f| and may change sign of the slope; the sensing part must not
    check("Z_f", -1, [](const BudgetPoint& b) { return b.sigma_vse; });
}

TEST_CASE("total spectrum never falls below the Langevin floor") {
    auto [p0, w0] = testing::reference();
    std::mt19937_64 rng(77);
    for (int i = 0; i < 2000; ++i) {
        const auto p = random_instrument(p0, w0, rng);
        for (double w : frequency_span(w0, 5, 2.0)) {
            const auto b = budget_point(p, w);
            const double floor = 2.0 * p.mechanics_at(w).damping *
                                 effective_temperature(p.theta_m, w).energy_per_mode;
            CHECK(b.sigma_ff >= floor * (1.0 - 1e-12));
        }
    }
}
