#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "coldamp/error.hpp"
#include "coldamp/noise.hpp"
#include "support.hpp"

using namespace coldamp;
using testing::rel;

namespace {

// Independent long-double evaluation of (hbar w / 2) coth(hbar w / 2kT).
long double coth_energy(long double t, long double w) {
    const long double half = 0.5L * static_cast<long double>(kHbar) * std::fabs(w);
    return half / std::tanh(half / (static_cast<long double>(kBoltzmann) * t));
}

NoiseLine line(double t) { return NoiseLine{"x", 50.0, t, false}; }

} // namespace

TEST_CASE("zero temperature gives exactly half a quantum") {
    for (double w : {1e-3, 2.0 * std::numbers::pi * 1e5, -7.5e9}) {
        CHECK(effective_temperature(0.0, w).energy_per_mode == 0.5 * kHbar * std::abs(w));
        CHECK(input_spectrum(line(0.0), w) == 0.5);
    }
    CHECK(quadrature_spectrum(line(0.0), 2.0 * std::numbers::pi * 1e5) == 1.0);
}

TEST_CASE("quantum equals twice thermal energy gives coth(1)") {
    const double w = 1e11;
    const double t = kHbar * w / (2.0 * kBoltzmann);
    const double ratio = effective_temperature(t, w).energy_per_mode / (kBoltzmann * t);
    CHECK(rel(ratio, static_cast<double>(1.0L / std::tanh(1.0L))) < 1e-13);
    CHECK(ratio == doctest::Approx(1.31304).epsilon(1e-5));
    CHECK(input_spectrum(line(t), w) == doctest::Approx(0.65652).epsilon(1e-5));
}

TEST_CASE("room temperature at the carrier is classical") {
    const double w = 2.0 * std::numbers::pi * 1e5;
    const double e = effective_temperature(300.0, w).energy_per_mode;
    CHECK(e == doctest::Approx(4.1420e-21).epsilon(1e-4));
    CHECK(rel(e, kBoltzmann * 300.0) < 1e-10);
    CHECK(input_spectrum(line(300.0), w) == doctest::Approx(6.25e7).epsilon(5e-3));
    CHECK(quadrature_spectrum(line(300.0), w) == doctest::Approx(1.25e8).epsilon(5e-3));
    CHECK(quadrature_spectrum(line(1.5), w) == doctest::Approx(6.25e5).epsilon(5e-3));
}

TEST_CASE("quadrature spectrum is twice the input spectrum at the carrier") {
    for (double t : {0.0, 1e-9, 1.5, 300.0})
        CHECK(quadrature_spectrum(line(t), 6.1e5) == 2.0 * input_spectrum(line(t), 6.1e5));
}

TEST_CASE("high temperature asymptote") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lg(-8.0, 2.0);
    for (int i = 0; i < 2000; ++i) {
        const double t = std::pow(10.0, lg(rng)) * 300.0;
        const double w = std::pow(10.0, lg(rng)) * 1e4;
        const double x = kHbar * w / (2.0 * kBoltzmann * t);
        if (x >= 1e-6) continue;
        CHECK(rel(effective_temperature(t, w).energy_per_mode, kBoltzmann * t) < 1e-12);
    }
}

TEST_CASE("agrees with an independent long double evaluation") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> lg(-3.0, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const double t = std::pow(10.0, lg(rng));
        // keep the argument away from the asymptotic branches
        const double w = std::pow(10.0, lg(rng)) * kBoltzmann * t / kHbar;
        const double got = effective_temperature(t, w).energy_per_mode;
        CHECK(rel(got, static_cast<double>(coth_energy(t, w))) < 1e-13);
    }
}

TEST_CASE("floor, equality only at zero temperature, monotone in temperature") {
    const double w = 3e7;
    const double floor = 0.5 * kHbar * w;
    double prev = effective_temperature(0.0, w).energy_per_mode;
    for (double t = 1e-6; t < 1e3; t *= 1.7) {
        const double e = effective_temperature(t, w).energy_per_mode;
        CHECK(e >= floor);
        CHECK(e >= prev * (1.0 - 1e-15));
        prev = e;
    }
    CHECK(effective_temperature(0.05, w).energy_per_mode > floor);
    CHECK(effective_temperature(0.05, w).energy_per_mode > effective_temperature(0.04, w).energy_per_mode);
}

TEST_CASE("x coth x branches") {
    CHECK(x_coth(0.0) == 1.0);
    CHECK(x_coth(31.0) == 31.0);
    CHECK(rel(x_coth(1e-9), 1.0) < 1e-16);
    CHECK(rel(x_coth(2.0), static_cast<double>(2.0L / std::tanh(2.0L))) < 1e-15);
}

TEST_CASE("rejects zero frequency and negative temperature") {
    CHECK_THROWS_AS(effective_temperature(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(effective_temperature(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(input_spectrum(line(1.0), 0.0), DomainError);
    CHECK_THROWS_AS(quadrature_spectrum(line(1.0), 0.0), DomainError);
    CHECK_THROWS_AS(quadrature_spectrum(line(1.0), -5.0), DomainError);
    CHECK_THROWS_AS((NoiseLine{"x", 0.0, 1.0, false}.validate()), DomainError);
    CHECK_THROWS_AS((NoiseLine{"x", 1.0, -2.0, false}.validate()), DomainError);
}
