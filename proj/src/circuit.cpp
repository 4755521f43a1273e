#include "mcgs/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace mcgs {

namespace {

void sort_and_validate(std::vector<ControlSpec>& controls, Qubit target) {
    std::sort(controls.begin(), controls.end(),
              [](const ControlSpec& a, const ControlSpec& b) { return a.qubit < b.qubit; });
    for (std::size_t i = 0; i < controls.size(); ++i) {
        if (controls[i].qubit == target) {
            throw std::invalid_argument("gate target " + std::to_string(target) + " is also a control");
        }
        if (i > 0 && controls[i - 1].qubit == controls[i].qubit) {
            throw std::invalid_argument("duplicate control qubit " + std::to_string(controls[i].qubit));
        }
    }
}

}  // namespace

Gate::Gate(GateKind kind, std::vector<ControlSpec> controls, Qubit target, std::optional<Mat2> matrix,
           std::string label)
    : kind_(kind), controls_(std::move(controls)), target_(target), matrix_(std::move(matrix)),
      label_(std::move(label)) {
    sort_and_validate(controls_, target_);
    if (kind_ == GateKind::unitary_1q) {
        if (!matrix_) throw std::invalid_argument("unitary gate without matrix");
        if (!is_unitary(*matrix_)) throw DomainError("gate matrix is not unitary to 1e-12");
    } else if (matrix_) {
        throw std::invalid_argument("X-type gate carries a matrix");
    }
}

Gate Gate::x(Qubit target) { return Gate(GateKind::x_type, {}, target, std::nullopt, {}); }

Gate Gate::cx(Qubit control, Qubit target) {
    return Gate(GateKind::x_type, {{control, Polarity::closed}}, target, std::nullopt, {});
}

Gate Gate::ccx(Qubit c0, Qubit c1, Qubit target) {
    return Gate(GateKind::x_type, {{c0, Polarity::closed}, {c1, Polarity::closed}}, target, std::nullopt,
                {});
}

Gate Gate::mcx(std::vector<ControlSpec> controls, Qubit target) {
    return Gate(GateKind::x_type, std::move(controls), target, std::nullopt, {});
}

Gate Gate::mcx(std::span<const Qubit> controls, Qubit target) {
    std::vector<ControlSpec> specs;
    specs.reserve(controls.size());
    for (Qubit q : controls) specs.push_back({q, Polarity::closed});
    return mcx(std::move(specs), target);
}

Gate Gate::unitary(const Mat2& matrix, Qubit target, std::string label) {
    return Gate(GateKind::unitary_1q, {}, target, matrix, std::move(label));
}

Gate Gate::controlled_unitary(const Mat2& matrix, ControlSpec control, Qubit target, std::string label) {
    return Gate(GateKind::unitary_1q, {control}, target, matrix, std::move(label));
}

bool Gate::has_open_control() const {
    return std::any_of(controls_.begin(), controls_.end(), [](const ControlSpec& c) { return c.is_open(); });
}

std::vector<Qubit> Gate::support() const {
    std::vector<Qubit> out;
    out.reserve(controls_.size() + 1);
    for (const auto& c : controls_) out.push_back(c.qubit);
    out.insert(std::upper_bound(out.begin(), out.end(), target_), target_);
    return out;
}

bool Gate::controls_qubit(Qubit q) const {
    auto it = std::lower_bound(controls_.begin(), controls_.end(), q,
                               [](const ControlSpec& c, Qubit v) { return c.qubit < v; });
    return it != controls_.end() && it->qubit == q;
}

bool Gate::touches(Qubit q) const { return q == target_ || controls_qubit(q); }

Qubit Gate::max_qubit() const {
    Qubit m = target_;
    if (!controls_.empty()) m = std::max(m, controls_.back().qubit);
    return m;
}

Gate Gate::inverse() const {
    if (kind_ == GateKind::x_type) return *this;
    Gate g = *this;
    g.matrix_ = adjoint(*matrix_);
    return g;
}

bool Gate::same_operation(const Gate& other) const {
    return kind_ == other.kind_ && target_ == other.target_ && controls_ == other.controls_ &&
           matrix_ == other.matrix_;
}

std::vector<Qubit> support(const Gate& g) { return g.support(); }

Circuit::Circuit(std::size_t width, Roles roles) : width_(width) {
    if (width_ == 0) throw std::invalid_argument("circuit width must be positive");
    set_roles(std::move(roles));
}

Circuit::Circuit(std::size_t width, std::vector<Gate> gates, Roles roles) : Circuit(width, std::move(roles)) {
    for (const auto& g : gates) check_gate(g);
    gates_ = std::move(gates);
}

void Circuit::set_roles(Roles roles) {
    std::vector<Qubit> all;
    for (const auto* set : {&roles.controls, &roles.target, &roles.ancilla}) {
        for (Qubit q : *set) {
            if (q >= width_) throw std::out_of_range("role qubit " + std::to_string(q) + " out of range");
            all.push_back(q);
        }
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw std::invalid_argument("role sets overlap");
    }
    roles_ = std::move(roles);
}

void Circuit::check_gate(const Gate& g) const {
    if (g.max_qubit() >= width_) {
        throw std::out_of_range("gate on qubit " + std::to_string(g.max_qubit()) + " exceeds width " +
                                std::to_string(width_));
    }
}

void Circuit::push_back(Gate g) {
    check_gate(g);
    gates_.push_back(std::move(g));
}

void Circuit::extend(std::span<const Gate> gates) {
    gates_.reserve(gates_.size() + gates.size());
    for (const auto& g : gates) push_back(g);
}

bool Circuit::is_x_type_only() const {
    return std::all_of(gates_.begin(), gates_.end(), [](const Gate& g) { return g.is_x_type(); });
}

bool same_gates(const Circuit& a, const Circuit& b) {
    return a.width() == b.width() && a.gates() == b.gates();
}

std::vector<Gate> invert_gates(std::span<const Gate> gates) {
    std::vector<Gate> out;
    out.reserve(gates.size());
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) out.push_back(it->inverse());
    return out;
}

Circuit invert(const Circuit& c) { return Circuit(c.width(), invert_gates(c.gates()), c.roles()); }

Circuit compose(const Circuit& a, const Circuit& b) {
    if (a.width() != b.width()) {
        throw std::invalid_argument("compose: width mismatch " + std::to_string(a.width()) + " vs " +
                                    std::to_string(b.width()));
    }
    Circuit out = a;
    out.extend(b.gates());
    return out;
}

Circuit append(const Circuit& c, Gate g) {
    Circuit out = c;
    out.push_back(std::move(g));
    return out;
}

std::size_t abstract_depth(std::span<const Gate> gates, std::size_t width) {
    std::vector<std::size_t> frontier(width, 0);
    std::size_t depth = 0;
    for (const auto& g : gates) {
        std::size_t layer = frontier[g.target()];
        for (const auto& c : g.controls()) layer = std::max(layer, frontier[c.qubit]);
        ++layer;
        frontier[g.target()] = layer;
        for (const auto& c : g.controls()) frontier[c.qubit] = layer;
        depth = std::max(depth, layer);
    }
    return depth;
}

std::size_t abstract_depth(const Circuit& c) { return abstract_depth(c.gates(), c.width()); }

std::size_t count_x_type_with_controls(const Circuit& c, std::size_t num_controls) {
    return static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [&](const Gate& g) {
        return g.is_x_type() && g.num_controls() == num_controls;
    }));
}

namespace {

struct UAngles {
    double theta = 0, phi = 0, lambda = 0, gamma = 0;
};

// M = e^{i gamma} U(theta, phi, lambda) with the OpenQASM U convention.
UAngles u_angles(const Mat2& m) {
    constexpr double eps = 1e-14;
    UAngles a;
    const double c = std::abs(m(0, 0));
    const double s = std::abs(m(1, 0));
    a.theta = 2.0 * std::atan2(s, c);
    if (c > eps && s > eps) {
        a.gamma = std::arg(m(0, 0));
        a.phi = std::arg(m(1, 0)) - a.gamma;
        a.lambda = std::arg(-m(0, 1)) - a.gamma;
    } else if (c > eps) {
        a.gamma = std::arg(m(0, 0));
        a.lambda = std::arg(m(1, 1)) - a.gamma;
    } else {
        a.gamma = std::arg(-m(0, 1));
        a.phi = std::arg(m(1, 0)) - a.gamma;
    }
    return a;
}

std::string fmt_angle(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string qref(Qubit q) { return "q[" + std::to_string(q) + "]"; }

}  // namespace

void write_qasm(const Circuit& c, std::ostream& out) {
    out << "OPENQASM 3.0;\n";
    out << "include \"stdgates.inc\";\n";
    out << "// basis: {1-qubit, cx}\n";
    out << "qubit[" << c.width() << "] q;\n";
    for (const auto& g : c.gates()) {
        std::string args;
        for (const auto& ctl : g.controls()) args += qref(ctl.qubit) + ", ";
        args += qref(g.target());

        std::string modifiers;
        std::size_t closed_run = 0;
        auto flush_closed = [&] {
            if (closed_run == 1) modifiers += "ctrl @ ";
            else if (closed_run > 1) modifiers += "ctrl(" + std::to_string(closed_run) + ") @ ";
            closed_run = 0;
        };
        for (const auto& ctl : g.controls()) {
            if (ctl.is_open()) {
                flush_closed();
                modifiers += "negctrl @ ";
            } else {
                ++closed_run;
            }
        }

        if (g.is_x_type()) {
            if (!g.has_open_control() && g.num_controls() <= 2) {
                static const char* names[] = {"x", "cx", "ccx"};
                out << names[g.num_controls()] << ' ' << args << ";\n";
            } else {
                flush_closed();
                out << modifiers << "x " << args << ";\n";
            }
            continue;
        }
        flush_closed();
        const UAngles a = u_angles(*g.matrix());
        out << modifiers << "u(" << fmt_angle(a.theta) << ", " << fmt_angle(a.phi) << ", "
            << fmt_angle(a.lambda) << ") " << args << ";";
        if (!g.label().empty()) out << "  // " << g.label();
        out << '\n';
        // A controlled global phase is a phase on the control.
        if (g.num_controls() == 1 && std::abs(a.gamma) > 1e-15) {
            const auto& ctl = g.controls().front();
            if (ctl.is_open()) out << "x " << qref(ctl.qubit) << ";\n";
            out << "p(" << fmt_angle(a.gamma) << ") " << qref(ctl.qubit) << ";\n";
            if (ctl.is_open()) out << "x " << qref(ctl.qubit) << ";\n";
        }
    }
}

std::string to_qasm(const Circuit& c) {
    std::ostringstream os;
    write_qasm(c, os);
    return os.str();
}

}  // namespace mcgs
