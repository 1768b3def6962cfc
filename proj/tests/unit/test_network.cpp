#include <doctest.h>

#include <cmath>
#include <random>

#include "coldamp/draws.hpp"
#include "coldamp/error.hpp"
#include "coldamp/network.hpp"
#include "coldamp/sensor.hpp"
#include "coldamp/sensor_network.hpp"
#include "coldamp/verify.hpp"
#include "support.hpp"

using namespace coldamp;
using testing::rel;

TEST_CASE("matched junction swaps its fields") {
    const auto res = solve(build_matched_junction(50.0, 1e3));
    CHECK(std::abs(res.entry("p0_out", "p1") - 1.0) < 1e-14);
    CHECK(std::abs(res.entry("p1_out", "p0") - 1.0) < 1e-14);
    CHECK(std::abs(res.entry("p0_out", "p0")) < 1e-14);
    CHECK(res.residual < 1e-12);
}

TEST_CASE("open line reflects its field") {
    for (double w : {1e-3, 1.0, -4e4}) {
        const auto res = solve(build_open_line(1e3, w));
        CHECK(std::abs(res.entry("p_out", "p") - 1.0) < 1e-14);
    }
}

TEST_CASE("toy networks are unitary") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lg(-3.0, 6.0);
    auto draw = [&] { return std::pow(10.0, lg(rng)); };
    for (int i = 0; i < 200; ++i) {
        const double w = draw();
        CHECK(check_commutators(solve(build_parallel_junction({draw(), draw(), draw()}, w))) < 1e-12);
        CHECK(check_commutators(solve(build_series_reactance(draw(), draw(), draw(), w))) < 1e-12);
    }
    CHECK(toy_commutator_deviation(2.0) < 1e-12);
    CHECK_THROWS_AS(build_parallel_junction({1.0}, 1.0), DomainError);
}

TEST_CASE("non-square system is rejected") {
    LinearNetwork net(7.0);
    net.add_unknown("x");
    net.add_unknown("y");
    net.add_drive("u");
    net.relate().on("x", 1.0).from("u", 1.0);
    try {
        solve(net);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(e.omega() == 7.0);
    }
}

TEST_CASE("singular system reports frequency and condition") {
    LinearNetwork net(3.0);
    net.add_unknown("x");
    net.add_unknown("y");
    net.add_drive("u");
    net.relate().on("x", 1.0).on("y", 2.0).from("u", 1.0);
    net.relate().on("x", 2.0).on("y", 4.0).from("u", 1.0);
    try {
        solve(net);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(e.omega() == 3.0);
        CHECK(e.condition() > 1e15);
    }
}

TEST_CASE("nearly singular system is flagged but solved") {
    LinearNetwork net(1.0);
    net.add_unknown("x");
    net.add_unknown("y");
    net.add_drive("u");
    net.add_drive("v");
    net.relate().on("x", 1.0).on("y", 1.0).from("u", 1.0);
    net.relate().on("x", 1.0).on("y", 1.0 + 1e-13).from("v", 1.0);
    const auto res = solve(net);
    CHECK(res.ill_conditioned());
    CHECK(res.condition > 1e12);
    CHECK(std::isfinite(res.entry("x", "u").real()));
    CHECK(res.residual < 1e-12);
}

TEST_CASE("unknown names are checked") {
    LinearNetwork net(1.0);
    net.add_unknown("x");
    CHECK_THROWS_AS(net.unknown_index("z"), std::out_of_range);
    CHECK_THROWS_AS(net.input_index("z"), std::out_of_range);
}

TEST_CASE("sensor network solves cleanly over random instruments") {
    auto [p0, w0] = testing::reference();
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto p = random_instrument(p0, w0, rng);
        for (double w : frequency_span(w0, 3, 2.0)) {
            const auto s = solve_sensor(p, w);
            CHECK(s.result.residual < 1e-12);
            CHECK_FALSE(s.result.ill_conditioned());
        }
    }
}

TEST_CASE("velocity row matches the free-mass table") {
    auto [p, w] = testing::reference();
    const auto s = solve_sensor(p, w);
    const cplx xi = mechanical_impedance(p, w).value;
    CHECK(rel(s.velocity_drive(), 1.0 / xi) < 1e-12);
    CHECK(max_relative_deviation(oracle_free_mass_coefficients(p, w), free_mass_coefficients(p, w)) < 1e-12);
    CHECK(qnd_isolation(p, w) < 1e-12);
}

TEST_CASE("without coupling the mechanics decouples") {
    auto [p, w] = testing::reference();
    p.coupling = 0.0;
    const auto s = solve_sensor(p, w);
    const auto v = s.velocity();
    for (Line l : kAllLines)
        if (l != Line::m) CHECK(std::abs(v[l]) == 0.0);
    CHECK(std::abs(s.detection_drive()) == 0.0);
}

TEST_CASE("passive outgoing lines preserve commutators") {
    auto [p0, w0] = testing::reference();
    std::mt19937_64 rng(8);
    CHECK(sensor_passive_commutator_deviation(p0, w0) < 1e-10);
    for (int i = 0; i < 50; ++i)
        CHECK(sensor_passive_commutator_deviation(random_instrument(p0, w0, rng), w0) < 1e-10);
}

TEST_CASE("commutator signs of the sideband representation") {
    const std::vector<Port> ports{{"p", PortKind::single, false, 1.0},
                                  {"q", PortKind::single, false, -1.0},
                                  {"r", PortKind::quadrature1, false, 1.0},
                                  {"r", PortKind::quadrature2, false, 1.0}};
    const auto eta = commutator_signs(ports);
    REQUIRE(eta.size() == 4);
    CHECK(eta[0] == 1.0);
    CHECK(eta[1] == -1.0);
    CHECK(eta[2] == 1.0);
    CHECK(eta[3] == -1.0);
    CHECK_THROWS(check_commutators(Eigen::MatrixXcd::Identity(3, 3), eta));
}
