#include "coldamp/sensor_network.hpp"

#include <cmath>
#include <string>

#include "coldamp/error.hpp"
#include "coldamp/noise.hpp"
#include "coldamp/sensor.hpp"

namespace coldamp {

namespace {

constexpr cplx I{0.0, 1.0};

std::string idx(const char* stem, int n) { return stem + std::to_string(n); }

Port quadrature_port(Line line, bool conjugated = false) {
    const auto name = std::string(label(line));
    const auto kind = name.back() == '1' ? PortKind::quadrature1 : PortKind::quadrature2;
    return Port{name, kind, conjugated, 1.0};
}

// Resistive line termination: U = R I + sqrt(2 hbar w R) p_in, p_out = sqrt(2/(hbar w R)) U - p_in.
void add_line(LinearNetwork& net, const std::string& u, const std::string& i, const std::string& in,
              const std::string& out, double r, double w) {
    net.relate().on(u, 1.0).on(i, -r).from(in, std::sqrt(2.0 * kHbar * w * r));
    net.relate().on(out, 1.0).on(u, -std::sqrt(2.0 / (kHbar * w * r))).from(in, -1.0);
}

} // namespace

LinearNetwork build_sensor_network(const InstrumentParams& p, std::optional<cplx> servo_gain,
                                   double omega) {
    if (omega == 0.0 || !std::isfinite(omega))
        throw DomainError("mechanical frequency must be finite and non-zero");
    p.validate();

    const auto mech = p.mechanics_at(omega);
    const double w = std::abs(omega);
    const double wt = p.carrier_omega;
    const double h = mech.damping;
    const cplx zt = transducer_impedance(p, omega);
    const cplx zf = p.feedback_impedance();
    const double kap = p.coupling;

    LinearNetwork net(omega);
    const double v_scale = std::sqrt(kHbar * w / h);
    const double f_scale = std::sqrt(kHbar * w * h);
    const double u_scale = std::sqrt(kHbar * wt * p.r_amp);
    const double i_scale = std::sqrt(kHbar * wt / p.r_amp);

    net.add_unknown("V", v_scale);
    net.add_unknown("F_m", f_scale);
    net.add_unknown("m_out");
    for (int n = 1; n <= 2; ++n) {
        net.add_unknown(idx("U", n), u_scale);
        net.add_unknown(idx("It", n), i_scale);
        net.add_unknown(idx("Il", n), i_scale);
        net.add_unknown(idx("If", n), i_scale);
        net.add_unknown(idx("Ur", n), u_scale);
        net.add_unknown(idx("l", n) + "_out");
        net.add_unknown(idx("r", n) + "_out");
    }

    net.add_drive("F_ext", f_scale);
    net.add_field_input(Port{"m", PortKind::single, false, omega > 0.0 ? 1.0 : -1.0});
    net.add_field_input(quadrature_port(Line::a1));
    net.add_field_input(quadrature_port(Line::a2));
    net.add_field_input(quadrature_port(Line::b1, true));
    net.add_field_input(quadrature_port(Line::b2, true));
    net.add_field_input(quadrature_port(Line::r1));
    net.add_field_input(quadrature_port(Line::r2));
    net.add_field_input(quadrature_port(Line::l1));
    net.add_field_input(quadrature_port(Line::l2));

    net.add_field_output("m_out", Port{"m", PortKind::single, false, omega > 0.0 ? 1.0 : -1.0});
    net.add_field_output("l1_out", quadrature_port(Line::l1));
    net.add_field_output("l2_out", quadrature_port(Line::l2));
    net.add_field_output("r1_out", quadrature_port(Line::r1));
    net.add_field_output("r2_out", quadrature_port(Line::r2));

    // Force balance: the external force is shared by the mechanical line and the
    // transducer mechanical port (reactive mass/spring part plus electrostatic back action).
    auto force = net.relate();
    force.on("F_m", 1.0)
        .on("V", I * mech.stiffness / omega - I * p.mass * omega)
        .on("It1", kap * zt)
        .from("F_ext", 1.0);
    if (servo_gain) force.on("r1_out", *servo_gain);

    // Mechanical line: F_m = H V + sqrt(2 hbar |W| H) m_in.
    net.relate().on("F_m", 1.0).on("V", -h).from("m", std::sqrt(2.0 * kHbar * w * h));
    net.relate().on("m_out", 1.0).on("F_m", -std::sqrt(2.0 / (kHbar * w * h))).from("m", -1.0);

    for (int n = 1; n <= 2; ++n) {
        const auto u = idx("U", n), it = idx("It", n), il = idx("Il", n), jf = idx("If", n),
                   ur = idx("Ur", n);
        const auto a = idx("a", n), b = idx("b", n), l = idx("l", n), r = idx("r", n);

        // Transducer electrical ports; only quadrature 2 carries the velocity.
        auto port = net.relate();
        port.on(u, 1.0).on(it, -zt);
        if (n == 2) port.on("V", -2.0 * I * kap * zt * wt / omega);

        add_line(net, u, il, l, l + "_out", p.r_loss, wt);

        // Ideal amplifier input: voltage and current noise.
        net.relate().on(u, 1.0)
            .from(a, std::sqrt(2.0 * kHbar * wt * p.r_amp))
            .from(b, -std::sqrt(2.0 * kHbar * wt * p.r_amp));
        net.relate().on(il, 1.0).on(jf, 1.0).on(it, 1.0)
            .from(a, std::sqrt(2.0 * kHbar * wt / p.r_amp))
            .from(b, std::sqrt(2.0 * kHbar * wt / p.r_amp));

        // Feedback reactance: Z_f(+w_t) = -Z_f(-w_t) rotates the quadratures,
        // (U - U_r)_1 = i Z_f I_f2 and (U - U_r)_2 = -i Z_f I_f1.
        if (n == 1)
            net.relate().on(u, 1.0).on(ur, -1.0).on("If2", -I * zf);
        else
            net.relate().on(u, 1.0).on(ur, -1.0).on("If1", I * zf);

        // Detection line driven by the amplifier output voltage.
        net.relate().on(r + "_out", 1.0)
            .on(ur, -std::sqrt(2.0 / (kHbar * wt * p.r_detect)))
            .from(r, -1.0);
    }
    return net;
}

namespace {

CoefficientSet field_row(const ScatteringResult& res, std::string_view unknown) {
    CoefficientSet c;
    for (Line l : kAllLines) c[l] = res.entry(unknown, label(l));
    return c;
}

} // namespace

CoefficientSet SensorSolution::velocity() const { return field_row(result, "V"); }
cplx SensorSolution::velocity_drive() const { return result.entry("V", "F_ext"); }
CoefficientSet SensorSolution::detection() const { return field_row(result, "r1_out"); }
cplx SensorSolution::detection_drive() const { return result.entry("r1_out", "F_ext"); }

CoefficientSet SensorSolution::estimator() const {
    auto c = detection();
    const cplx g = detection_drive();
    if (g == 0.0) throw DomainError("detection output does not see the external force");
    for (auto& v : c.values) v /= g;
    return c;
}

SensorSolution solve_sensor(const InstrumentParams& p, double omega, std::optional<cplx> servo_gain) {
    return {solve(build_sensor_network(p, servo_gain, omega))};
}

CoefficientSet oracle_free_mass_coefficients(const InstrumentParams& p, double omega) {
    const auto sol = solve_sensor(p, omega);
    const cplx xi = mechanical_impedance(p, omega).value;
    auto c = sol.velocity();
    for (auto& v : c.values) v *= xi;
    return c;
}

std::vector<std::string> passive_output_labels() { return {"m", "l1", "l2"}; }

LinearNetwork build_matched_junction(double r, double omega) {
    return build_parallel_junction({r, r}, omega);
}

LinearNetwork build_open_line(double r, double omega) {
    const double w = std::abs(omega);
    const double sign = omega < 0.0 ? -1.0 : 1.0;
    LinearNetwork net(omega);
    net.add_unknown("U", std::sqrt(kHbar * w * r));
    net.add_unknown("I", std::sqrt(kHbar * w / r));
    net.add_unknown("p_out");
    net.add_field_input(Port{"p", PortKind::single, false, sign});
    net.add_field_output("p_out", Port{"p", PortKind::single, false, sign});
    add_line(net, "U", "I", "p", "p_out", r, w);
    net.relate().on("I", 1.0);
    return net;
}

LinearNetwork build_parallel_junction(const std::vector<double>& impedances, double omega) {
    if (impedances.size() < 2) throw DomainError("a junction needs at least two lines");
    const double w = std::abs(omega);
    const double sign = omega < 0.0 ? -1.0 : 1.0;
    LinearNetwork net(omega);
    net.add_unknown("U", std::sqrt(kHbar * w * impedances.front()));
    for (std::size_t k = 0; k < impedances.size(); ++k) {
        const auto name = "p" + std::to_string(k);
        net.add_unknown("I_" + name, std::sqrt(kHbar * w / impedances[k]));
        net.add_unknown(name + "_out");
        net.add_field_input(Port{name, PortKind::single, false, sign});
    }
    for (std::size_t k = 0; k < impedances.size(); ++k) {
        const auto name = "p" + std::to_string(k);
        net.add_field_output(name + "_out", Port{name, PortKind::single, false, sign});
        add_line(net, "U", "I_" + name, name, name + "_out", impedances[k], w);
    }
    auto kcl = net.relate();
    for (std::size_t k = 0; k < impedances.size(); ++k) kcl.on("I_p" + std::to_string(k), 1.0);
    return net;
}

LinearNetwork build_series_reactance(double r1, double r2, double x, double omega) {
    const double w = std::abs(omega);
    const double sign = omega < 0.0 ? -1.0 : 1.0;
    LinearNetwork net(omega);
    net.add_unknown("U1", std::sqrt(kHbar * w * r1));
    net.add_unknown("U2", std::sqrt(kHbar * w * r2));
    net.add_unknown("I_p", std::sqrt(kHbar * w / r1));
    net.add_unknown("I_q", std::sqrt(kHbar * w / r2));
    net.add_unknown("J", std::sqrt(kHbar * w / r1));
    net.add_unknown("p_out");
    net.add_unknown("q_out");
    net.add_field_input(Port{"p", PortKind::single, false, sign});
    net.add_field_input(Port{"q", PortKind::single, false, sign});
    net.add_field_output("p_out", Port{"p", PortKind::single, false, sign});
    net.add_field_output("q_out", Port{"q", PortKind::single, false, sign});
    add_line(net, "U1", "I_p", "p", "p_out", r1, w);
    add_line(net, "U2", "I_q", "q", "q_out", r2, w);
    net.relate().on("U1", 1.0).on("U2", -1.0).on("J", -cplx(0.0, x));
    net.relate().on("I_p", 1.0).on("J", 1.0);
    net.relate().on("I_q", 1.0).on("J", -1.0);
    return net;
}

} // namespace coldamp
