#include <doctest.h>

#include <cmath>
#include <random>

#include "coldamp/draws.hpp"
#include "coldamp/error.hpp"
#include "coldamp/noise.hpp"
#include "coldamp/sensor.hpp"
#include "support.hpp"

using namespace coldamp;
using testing::rel;

TEST_CASE("mechanical impedance") {
    auto [p, w] = testing::reference();
    const cplx xi = mechanical_impedance(p, w).value;
    CHECK(xi.real() == p.damping);
    CHECK(xi.imag() == doctest::Approx(4.25e-4).epsilon(2e-3));
    CHECK(xi.imag() == doctest::Approx(p.stiffness / w - p.mass * w));

    auto q = p;
    q.stiffness = 0.0;
    CHECK(mechanical_impedance(q, w).value == cplx(p.damping, -p.mass * w));

    const double w0 = std::sqrt(p.stiffness / p.mass);
    const cplx at_resonance = mechanical_impedance(p, w0).value;
    CHECK(at_resonance.real() == p.damping);
    CHECK(std::abs(at_resonance.imag()) < 1e-15 * p.stiffness / w0);

    CHECK_THROWS_AS(mechanical_impedance(p, 0.0), DomainError);
}

TEST_CASE("mechanical override table") {
    auto [p, w] = testing::reference();
    p.overrides.push_back({w, 2.0 * p.stiffness, 3.0 * p.damping});
    CHECK(mechanical_impedance(p, w).damping() == 3.0 * p.damping);
    CHECK(mechanical_impedance(p, 2.0 * w).damping() == p.damping);
    CHECK(mechanical_impedance(p, w).value.imag() == doctest::Approx(2.0 * p.stiffness / w - p.mass * w));
}

TEST_CASE("transducer impedance") {
    auto [p, w] = testing::reference();
    const cplx zt = transducer_impedance(p, w);
    CHECK(zt.real() == 0.0);
    CHECK(rel(std::abs(zt), 1e14) < 1e-14);
    CHECK(p.c_transducer == doctest::Approx(1.59e-12).epsilon(2e-3));
    CHECK(rel(std::abs(transducer_impedance(p, 10.0 * w)), 1e13) < 1e-14);
    auto q = p;
    q.c_transducer *= 2.0;
    CHECK(rel(transducer_impedance(q, w), zt / 2.0) < 1e-15);
    CHECK_THROWS_AS(transducer_impedance(p, 0.0), DomainError);
}

TEST_CASE("free mass coefficients") {
    auto [p, w] = testing::reference();
    const auto lambda = free_mass_coefficients(p, w);
    for (Line l : {Line::a2, Line::b2, Line::r1, Line::r2, Line::l1, Line::l2}) CHECK(lambda[l] == 0.0);
    CHECK(lambda[Line::a1] == -lambda[Line::b1]);
    CHECK(lambda[Line::m].real() < 0.0);

    const auto spectra = line_spectra(p, w);
    const double langevin = std::norm(lambda[Line::m]) * spectra[Line::m].real();
    CHECK(rel(langevin, 2.0 * p.damping * effective_temperature(p.theta_m, w).energy_per_mode) < 1e-14);
    CHECK(langevin == doctest::Approx(1.077e-25).epsilon(1e-3));

    p.coupling = 0.0;
    const auto decoupled = free_mass_coefficients(p, w);
    CHECK(decoupled[Line::a1] == 0.0);
    CHECK(decoupled[Line::b1] == 0.0);
    CHECK(decoupled[Line::m] != 0.0);
}

TEST_CASE("estimator coefficients structure") {
    auto [p, w] = testing::reference();
    const auto mu = estimator_coefficients(p, w);
    const auto lambda = free_mass_coefficients(p, w);
    CHECK(mu[Line::l1] == 0.0);
    CHECK(mu[Line::r2] == 0.0);
    CHECK(mu[Line::m] == lambda[Line::m]);
    CHECK(mu[Line::a1] == -mu[Line::b1]);

    auto q = p;
    q.coupling = 0.0;
    CHECK_THROWS_AS(estimator_coefficients(q, w), DomainError);
}

TEST_CASE("sensing terms vanish with the mechanical impedance") {
    auto [p, w] = testing::reference();
    p.mass = 0.0;
    p.stiffness = 0.0;
    p.damping = 1e-30;
    const auto mu = estimator_coefficients(p, w);
    const auto lambda = free_mass_coefficients(p, w);
    for (Line l : {Line::l2, Line::r1, Line::a2, Line::b2}) CHECK(std::abs(mu[l]) < 1e-40);
    CHECK(rel(mu[Line::a1], lambda[Line::a1]) < 1e-20);
}

TEST_CASE("sensing part divided by Xi_m follows its explicit frequency dependence") {
    auto [p, w0] = testing::reference();
    const double wt = p.carrier_omega;
    const cplx I{0.0, 1.0};
    for (double w = w0 / 10.0; w <= w0 * 10.0; w *= 1.25) {
        const auto mu = estimator_coefficients(p, w);
        const auto lambda = free_mass_coefficients(p, w);
        const cplx xi = mechanical_impedance(p, w).value;
        auto part = [&](Line l) { return (mu[l] - lambda[l]) / xi; };
        const cplx zf = p.feedback_impedance();
        const cplx inv_zt = -2.0 * I * w * p.c_transducer;
        const double k = p.coupling;
        CHECK(rel(part(Line::l2), -I * w * std::sqrt(kHbar / (2.0 * p.r_loss * wt)) / k) < 1e-10);
        CHECK(rel(part(Line::r1), -w * std::sqrt(kHbar * p.r_detect / (2.0 * wt)) / (2.0 * zf * k)) < 1e-10);
        CHECK(rel(part(Line::a1), std::sqrt(2.0 * kHbar * p.r_amp * wt) * w / (2.0 * k * wt * zf)) < 1e-10);
        const cplx pre = -I * w * std::sqrt(kHbar * p.r_amp / (2.0 * wt)) / k;
        CHECK(rel(part(Line::a2), pre * (1.0 / p.r_amp - 1.0 / p.r_loss - inv_zt)) < 1e-10);
        CHECK(rel(part(Line::b2), pre * (1.0 / p.r_amp + 1.0 / p.r_loss + inv_zt)) < 1e-10);
    }
}

TEST_CASE("reference spectrum is Langevin dominated") {
    auto [p, w] = testing::reference();
    const auto b = sensor_noise_spectrum(p, w);
    CHECK(b.total == doctest::Approx(1.08e-25).epsilon(5e-3));
    CHECK(b.langevin / b.total > 0.999);
    CHECK(rel(b.components_sum(), b.total) < 1e-12);
}

TEST_CASE("decomposition sums to the coefficient sum over random draws") {
    auto [p0, w] = testing::reference();
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_instrument(p0, w, rng);
        const auto b = sensor_noise_spectrum(p, w);
        CHECK(rel(b.components_sum(), b.total) < 1e-12);
        const double free_running = quadratic_form(free_mass_coefficients(p, w), line_spectra(p, w));
        CHECK(rel(b.langevin + b.back_action, free_running) < 1e-12);
    }
}

TEST_CASE("vacuum floor at zero temperature") {
    auto [p, w] = testing::reference();
    p.theta_m = p.theta_a = p.theta_l = p.theta_r = 0.0;
    const auto b = sensor_noise_spectrum(p, w);
    const auto mu = estimator_coefficients(p, w);
    double floor = 0.5 * std::norm(mu[Line::m]);
    for (Line l : kAllLines)
        if (l != Line::m) floor += std::norm(mu[l]);
    CHECK(rel(b.total, floor) < 1e-12);
    CHECK(b.langevin >= 0.0);
    CHECK(b.back_action >= 0.0);
    CHECK(b.sensing >= 0.0);
}

TEST_CASE("coupling scaling of back action and sensing") {
    auto [p, w] = testing::reference();
    const auto b1 = sensor_noise_spectrum(p, w);
    p.coupling *= 10.0;
    const auto b2 = sensor_noise_spectrum(p, w);
    CHECK(std::log10(b2.back_action / b1.back_action) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::log10(b2.sensing / b1.sensing) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(b2.langevin == b1.langevin);
}
