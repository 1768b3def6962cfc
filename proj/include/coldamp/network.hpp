#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace coldamp {

using cplx = std::complex<double>;

class LinearNetwork;
struct ScatteringResult;
ScatteringResult solve(const LinearNetwork& net);

/// How an incoming or outgoing field is represented in the linear system.
/// Quadrature ports come in adjacent (quadrature1, quadrature2) pairs of one line;
/// they map onto the sidebands omega_t + Omega and -omega_t + Omega.
enum class PortKind { single, quadrature1, quadrature2 };

struct Port {
    std::string label;
    PortKind kind = PortKind::single;
    bool conjugated = false;      // the field enters as its conjugate (amplifier b line)
    double frequency_sign = 1.0;  // sign of the port frequency for single ports
};

/// A square complex linear system A x = B u assembled from element relations.
/// Unknowns and inputs carry a physical scale; the solver works on the
/// dimensionless variables x/scale and reports transfers in physical units.
class LinearNetwork {
public:
    class Relation {
    public:
        Relation& on(std::string_view unknown, cplx coefficient);
        Relation& from(std::string_view input, cplx coefficient);

    private:
        friend class LinearNetwork;
        Relation(LinearNetwork* net, std::size_t row) : net_(net), row_(row) {}
        LinearNetwork* net_;
        std::size_t row_;
    };

    explicit LinearNetwork(double omega = 0.0) : omega_(omega) {}

    std::size_t add_unknown(std::string name, double scale = 1.0);
    /// A classical drive (for example the external force).
    std::size_t add_drive(std::string name, double scale = 1.0);
    /// An incoming noise field; dimensionless.
    std::size_t add_field_input(Port port);
    /// Declares an existing unknown as an outgoing field.
    void add_field_output(std::string_view unknown, Port port);

    /// Starts a new equation: sum(on) = sum(from).
    Relation relate();

    std::size_t unknown_count() const { return unknowns_.size(); }
    std::size_t input_count() const { return inputs_.size(); }
    std::size_t equation_count() const { return equations_.size(); }
    double omega() const { return omega_; }

    std::size_t unknown_index(std::string_view name) const;
    std::size_t input_index(std::string_view name) const;

private:
    friend ScatteringResult solve(const LinearNetwork& net);

    struct Variable {
        std::string name;
        double scale;
    };
    struct InputVariable {
        std::string name;
        double scale;
        bool is_field;
        Port port;
    };
    struct Term {
        std::size_t index;
        cplx coefficient;
    };
    struct Equation {
        std::vector<Term> lhs;
        std::vector<Term> rhs;
    };
    struct Output {
        std::size_t unknown;
        Port port;
    };

    double omega_;
    std::vector<Variable> unknowns_;
    std::vector<InputVariable> inputs_;
    std::vector<Equation> equations_;
    std::vector<Output> outputs_;
};

/// Solution of a LinearNetwork at one frequency.
struct ScatteringResult {
    std::vector<std::string> unknown_names;
    std::vector<std::string> input_names;
    Eigen::MatrixXcd transfer;           // unknowns x inputs, physical units

    std::vector<Port> in_ports;          // field inputs, in declaration order
    std::vector<Port> out_ports;
    Eigen::MatrixXcd s_matrix;           // outgoing x incoming fields (port representation)

    double condition = 0.0;              // 1-norm condition estimate of the scaled system
    double residual = 0.0;               // componentwise backward error of the solve

    bool ill_conditioned() const { return condition > 1e12; }

    /// Transfer row of one unknown against all inputs.
    Eigen::RowVectorXcd row(std::string_view unknown) const;
    cplx entry(std::string_view unknown, std::string_view input) const;
};

/// Dense LU solve with partial pivoting. Throws NumericalError (carrying the
/// frequency and condition estimate) when the system is not square or singular.
ScatteringResult solve(const LinearNetwork& net);

/// S expressed on sideband fields: every quadrature pair (p1, p2) is replaced by
/// (p[omega_t + Omega], p[-omega_t + Omega]).
Eigen::MatrixXcd sideband_s_matrix(const ScatteringResult& res);

/// Commutator signs of the ports in the sideband representation.
std::vector<double> commutator_signs(const std::vector<Port>& ports);

/// max |S eta_in S^dagger - eta_out| over all entries.
double check_commutators(const Eigen::MatrixXcd& s, const std::vector<double>& eta_in,
                         const std::vector<double>& eta_out);

/// Square S with the same signs on both sides.
double check_commutators(const Eigen::MatrixXcd& s, const std::vector<double>& eta);

/// Full check on a solved network, in the sideband representation.
double check_commutators(const ScatteringResult& res);

/// As above, restricted to the outgoing ports whose label is in `out_labels`.
double check_commutators(const ScatteringResult& res, const std::vector<std::string>& out_labels);

} // namespace coldamp
