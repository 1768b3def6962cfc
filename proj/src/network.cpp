#include "coldamp/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "coldamp/error.hpp"

namespace coldamp {

namespace {

constexpr cplx I{0.0, 1.0};

template <class Vec>
std::size_t find_name(const Vec& v, std::string_view name, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i].name == name) return i;
    throw std::out_of_range(std::string("no ") + what + " named '" + std::string(name) + "'");
}

// Columns of the sideband -> port basis change: q = T s.
Eigen::MatrixXcd port_basis(const std::vector<Port>& ports) {
    const auto n = static_cast<Eigen::Index>(ports.size());
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& p = ports[static_cast<std::size_t>(i)];
        switch (p.kind) {
        case PortKind::single:
            t(i, i) = 1.0;
            break;
        case PortKind::quadrature1:
            if (i + 1 >= n || ports[static_cast<std::size_t>(i + 1)].kind != PortKind::quadrature2)
                throw std::invalid_argument("quadrature port '" + p.label + "' has no partner");
            // p1 = p+ + p-,  p2 = (p+ - p-)/i
            t(i, i) = 1.0;
            t(i, i + 1) = 1.0;
            t(i + 1, i) = -I;
            t(i + 1, i + 1) = I;
            ++i;
            break;
        case PortKind::quadrature2:
            throw std::invalid_argument("quadrature port '" + p.label + "' is not preceded by its partner");
        }
    }
    return t;
}

} // namespace

LinearNetwork::Relation& LinearNetwork::Relation::on(std::string_view unknown, cplx coefficient) {
    net_->equations_[row_].lhs.push_back({net_->unknown_index(unknown), coefficient});
    return *this;
}

LinearNetwork::Relation& LinearNetwork::Relation::from(std::string_view input, cplx coefficient) {
    net_->equations_[row_].rhs.push_back({net_->input_index(input), coefficient});
    return *this;
}

std::size_t LinearNetwork::add_unknown(std::string name, double scale) {
    unknowns_.push_back({std::move(name), scale});
    return unknowns_.size() - 1;
}

std::size_t LinearNetwork::add_drive(std::string name, double scale) {
    inputs_.push_back({std::move(name), scale, false, {}});
    return inputs_.size() - 1;
}

std::size_t LinearNetwork::add_field_input(Port port) {
    std::string name = port.label;
    inputs_.push_back({std::move(name), 1.0, true, std::move(port)});
    return inputs_.size() - 1;
}

void LinearNetwork::add_field_output(std::string_view unknown, Port port) {
    outputs_.push_back({unknown_index(unknown), std::move(port)});
}

LinearNetwork::Relation LinearNetwork::relate() {
    equations_.emplace_back();
    return Relation(this, equations_.size() - 1);
}

std::size_t LinearNetwork::unknown_index(std::string_view name) const {
    return find_name(unknowns_, name, "unknown");
}

std::size_t LinearNetwork::input_index(std::string_view name) const {
    return find_name(inputs_, name, "input");
}

ScatteringResult solve(const LinearNetwork& net) {
    const auto n = static_cast<Eigen::Index>(net.unknowns_.size());
    const auto m = static_cast<Eigen::Index>(net.inputs_.size());
    if (static_cast<Eigen::Index>(net.equations_.size()) != n) {
        std::ostringstream os;
        os << "network is not square: " << net.equations_.size() << " equations for " << n
           << " unknowns";
        throw NumericalError(os.str(), net.omega(), std::numeric_limits<double>::infinity());
    }

    // Dimensionless columns from the physical scales, then Ruiz equilibration
    // so that every row and column has unit infinity-norm.
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, m);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& eq = net.equations_[static_cast<std::size_t>(r)];
        for (const auto& t : eq.lhs)
            a(r, static_cast<Eigen::Index>(t.index)) += t.coefficient * net.unknowns_[t.index].scale;
        for (const auto& t : eq.rhs)
            b(r, static_cast<Eigen::Index>(t.index)) += t.coefficient * net.inputs_[t.index].scale;
        if (a.row(r).cwiseAbs().maxCoeff() == 0.0) {
            std::ostringstream os;
            os << "equation " << r << " has no unknowns";
            throw NumericalError(os.str(), net.omega(), std::numeric_limits<double>::infinity());
        }
    }
    Eigen::VectorXd col_scale = Eigen::VectorXd::Ones(n);
    for (int sweep = 0; sweep < 40; ++sweep) {
        double spread = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) {
            const double f = std::sqrt(a.row(r).cwiseAbs().maxCoeff());
            a.row(r) /= f;
            b.row(r) /= f;
            spread = std::max(spread, std::abs(1.0 - f));
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            const double f = std::sqrt(a.col(c).cwiseAbs().maxCoeff());
            if (f == 0.0) continue;
            a.col(c) /= f;
            col_scale(c) /= f;
            spread = std::max(spread, std::abs(1.0 - f));
        }
        if (spread < 1e-3) break;
    }

    // The sensor system couples impedances spanning ~9 decades around a loop
    // (velocity, transducer current, feedback, amplifier node, back action) whose gain no
    // diagonal scaling of A can remove. The first factorization only estimates the natural
    // magnitude of every unknown; the columns are then rescaled to it and the system is
    // factored again. Both passes run in extended precision.
    using MatrixXcld = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
    MatrixXcld al = a.cast<std::complex<long double>>();
    MatrixXcld bl = b.cast<std::complex<long double>>();
    const auto singular = [&](double condition) {
        std::ostringstream os;
        os << "singular network at omega = " << net.omega() << " (condition estimate " << condition << ")";
        return NumericalError(os.str(), net.omega(), condition);
    };

    const MatrixXcld y0 = Eigen::PartialPivLU<MatrixXcld>(al).solve(bl);
    if (!y0.allFinite()) throw singular(std::numeric_limits<double>::infinity());
    Eigen::Matrix<long double, Eigen::Dynamic, 1> natural(n);
    for (Eigen::Index c = 0; c < n; ++c) {
        const long double s = y0.row(c).cwiseAbs().maxCoeff();
        natural(c) = s > 0.0L ? s : 1.0L;
        al.col(c) *= natural(c);
    }
    for (Eigen::Index r = 0; r < n; ++r) {
        const long double f = al.row(r).cwiseAbs().maxCoeff();
        if (f == 0.0L) throw singular(std::numeric_limits<double>::infinity());
        al.row(r) /= f;
        bl.row(r) /= f;
    }

    Eigen::PartialPivLU<MatrixXcld> lu(al);
    const long double rcond = lu.rcond();
    const double condition =
        rcond > 0.0L ? static_cast<double>(1.0L / rcond) : std::numeric_limits<double>::infinity();
    // coefficients are only known to double precision
    if (!(rcond > static_cast<long double>(n) * std::numeric_limits<double>::epsilon()))
        throw singular(condition);
    const MatrixXcld yl = lu.solve(bl);
    if (!yl.allFinite()) {
        std::ostringstream os;
        os << "non-finite solution at omega = " << net.omega();
        throw NumericalError(os.str(), net.omega(), condition);
    }

    // Normwise backward error per equation: |A y - b| / (max|A_r| |y| + |b|).
    const MatrixXcld resid = al * yl - bl;
    double backward = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
        const long double ynorm = yl.col(j).cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < n; ++i) {
            const long double bound = al.row(i).cwiseAbs().maxCoeff() * ynorm + std::abs(bl(i, j));
            if (bound > 0.0L)
                backward = std::max(backward, static_cast<double>(std::abs(resid(i, j)) / bound));
        }
    }

    Eigen::MatrixXcd y(n, m);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            y(i, j) = static_cast<cplx>(yl(i, j) * natural(i));

    ScatteringResult res;
    res.condition = condition;
    res.residual = backward;
    res.transfer.resize(n, m);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            res.transfer(i, j) = y(i, j) * col_scale(i) * net.unknowns_[static_cast<std::size_t>(i)].scale /
                                 net.inputs_[static_cast<std::size_t>(j)].scale;
    for (const auto& u : net.unknowns_) res.unknown_names.push_back(u.name);

    std::vector<Eigen::Index> field_columns;
    for (std::size_t j = 0; j < net.inputs_.size(); ++j) {
        res.input_names.push_back(net.inputs_[j].name);
        if (net.inputs_[j].is_field) {
            field_columns.push_back(static_cast<Eigen::Index>(j));
            res.in_ports.push_back(net.inputs_[j].port);
        }
    }
    res.s_matrix.resize(static_cast<Eigen::Index>(net.outputs_.size()),
                        static_cast<Eigen::Index>(field_columns.size()));
    for (std::size_t o = 0; o < net.outputs_.size(); ++o) {
        res.out_ports.push_back(net.outputs_[o].port);
        for (std::size_t k = 0; k < field_columns.size(); ++k)
            res.s_matrix(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(k)) =
                res.transfer(static_cast<Eigen::Index>(net.outputs_[o].unknown), field_columns[k]);
    }
    return res;
}

Eigen::RowVectorXcd ScatteringResult::row(std::string_view unknown) const {
    for (std::size_t i = 0; i < unknown_names.size(); ++i)
        if (unknown_names[i] == unknown) return transfer.row(static_cast<Eigen::Index>(i));
    throw std::out_of_range("no unknown named '" + std::string(unknown) + "'");
}

cplx ScatteringResult::entry(std::string_view unknown, std::string_view input) const {
    const auto r = row(unknown);
    for (std::size_t j = 0; j < input_names.size(); ++j)
        if (input_names[j] == input) return r(static_cast<Eigen::Index>(j));
    throw std::out_of_range("no input named '" + std::string(input) + "'");
}

Eigen::MatrixXcd sideband_s_matrix(const ScatteringResult& res) {
    const Eigen::MatrixXcd t_in = port_basis(res.in_ports);
    const Eigen::MatrixXcd t_out = port_basis(res.out_ports);
    return t_out.partialPivLu().solve(res.s_matrix * t_in);
}

std::vector<double> commutator_signs(const std::vector<Port>& ports) {
    std::vector<double> eta;
    eta.reserve(ports.size());
    for (const auto& p : ports) {
        double s = 1.0;
        switch (p.kind) {
        case PortKind::single: s = p.frequency_sign < 0.0 ? -1.0 : 1.0; break;
        case PortKind::quadrature1: s = 1.0; break;    // omega_t + Omega > 0
        case PortKind::quadrature2: s = -1.0; break;   // -omega_t + Omega < 0
        }
        eta.push_back(p.conjugated ? -s : s);
    }
    return eta;
}

double check_commutators(const Eigen::MatrixXcd& s, const std::vector<double>& eta_in,
                         const std::vector<double>& eta_out) {
    if (static_cast<std::size_t>(s.cols()) != eta_in.size() ||
        static_cast<std::size_t>(s.rows()) != eta_out.size())
        throw std::invalid_argument("commutator signs do not match the S-matrix shape");
    Eigen::VectorXcd in(s.cols()), out(s.rows());
    for (Eigen::Index i = 0; i < s.cols(); ++i) in(i) = eta_in[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i < s.rows(); ++i) out(i) = eta_out[static_cast<std::size_t>(i)];
    const Eigen::MatrixXcd d =
        s * in.asDiagonal() * s.adjoint() - Eigen::MatrixXcd(out.asDiagonal());
    return d.cwiseAbs().maxCoeff();
}

double check_commutators(const Eigen::MatrixXcd& s, const std::vector<double>& eta) {
    return check_commutators(s, eta, eta);
}

double check_commutators(const ScatteringResult& res) {
    return check_commutators(sideband_s_matrix(res), commutator_signs(res.in_ports),
                             commutator_signs(res.out_ports));
}

double check_commutators(const ScatteringResult& res, const std::vector<std::string>& out_labels) {
    const Eigen::MatrixXcd s = sideband_s_matrix(res);
    const auto eta_out_all = commutator_signs(res.out_ports);
    std::vector<Eigen::Index> rows;
    std::vector<double> eta_out;
    for (std::size_t i = 0; i < res.out_ports.size(); ++i) {
        if (std::find(out_labels.begin(), out_labels.end(), res.out_ports[i].label) != out_labels.end()) {
            rows.push_back(static_cast<Eigen::Index>(i));
            eta_out.push_back(eta_out_all[i]);
        }
    }
    Eigen::MatrixXcd sub(static_cast<Eigen::Index>(rows.size()), s.cols());
    for (std::size_t k = 0; k < rows.size(); ++k) sub.row(static_cast<Eigen::Index>(k)) = s.row(rows[k]);
    return check_commutators(sub, commutator_signs(res.in_ports), eta_out);
}

} // namespace coldamp
