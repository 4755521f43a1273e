#include "mcgs/lowering.hpp"

#include <algorithm>
#include <numbers>

#include "mcgs/synth_ctrl_u.hpp"

namespace mcgs {

namespace {

const Mat2& hadamard() {
    static const Mat2 h = (Complex{1.0 / std::numbers::sqrt2}) * make_mat2(1.0, 1.0, 1.0, -1.0);
    return h;
}

Gate h_gate(Qubit q) { return Gate::unitary(hadamard(), q, "h"); }
Gate t_gate(Qubit q) { return Gate::unitary(phase_gate(std::numbers::pi / 4), q, "t"); }
Gate tdg_gate(Qubit q) { return Gate::unitary(phase_gate(-std::numbers::pi / 4), q, "tdg"); }

}  // namespace

std::vector<Gate> toffoli_template(Qubit a, Qubit b, Qubit t) {
    return {h_gate(t),      Gate::cx(b, t), tdg_gate(t), Gate::cx(a, t), t_gate(t),
            Gate::cx(b, t), tdg_gate(t),    Gate::cx(a, t), t_gate(b),    t_gate(t),
            h_gate(t),      Gate::cx(a, b), t_gate(a),   tdg_gate(b),    Gate::cx(a, b)};
}

std::vector<Gate> relative_phase_toffoli_template(Qubit a, Qubit b, Qubit t) {
    const double q = std::numbers::pi / 4;
    return {Gate::unitary(ry(q), t, "ry"),  Gate::cx(b, t), Gate::unitary(ry(q), t, "ry"), Gate::cx(a, t),
            Gate::unitary(ry(-q), t, "ry"), Gate::cx(b, t), Gate::unitary(ry(-q), t, "ry")};
}

std::vector<Gate> controlled_unitary_template(const Mat2& u, Qubit control, Qubit target) {
    const double phase = std::arg(det(u)) / 2.0;
    const Mat2 w = std::polar(1.0, -phase) * u;
    const AbcFactors f = abc_factors(w);
    std::vector<Gate> out{Gate::unitary(f.c, target, "c"), Gate::cx(control, target),
                          Gate::unitary(f.b, target, "b"), Gate::cx(control, target),
                          Gate::unitary(f.a, target, "a")};
    if (std::abs(phase) > 1e-15) out.push_back(Gate::unitary(phase_gate(phase), control, "p"));
    return out;
}

std::vector<Gate> lower_open_controls(const Gate& g) {
    if (!g.is_x_type()) throw UnsupportedGate("lower_open_controls expects an X-type gate");
    if (!g.has_open_control()) return {g};
    std::vector<Gate> flips;
    std::vector<ControlSpec> closed;
    for (const auto& c : g.controls()) {
        if (c.is_open()) flips.push_back(Gate::x(c.qubit));
        closed.push_back({c.qubit, Polarity::closed});
    }
    std::vector<Gate> out = flips;
    out.push_back(Gate::mcx(std::move(closed), g.target()));
    out.insert(out.end(), flips.begin(), flips.end());
    return out;
}

std::vector<Gate> lower_gate(const Gate& g, const LoweringRuleset& rules) {
    if (g.is_x_type()) {
        if (g.num_controls() > 2) {
            throw UnsupportedGate("cannot lower X gate with " + std::to_string(g.num_controls()) +
                                  " controls; synthesize it first");
        }
        if (g.num_controls() < 2 && !g.has_open_control()) return {g};
        std::vector<Gate> out;
        for (auto& part : lower_open_controls(g)) {
            if (part.num_controls() == 2) {
                const Qubit a = part.controls()[0].qubit;
                const Qubit b = part.controls()[1].qubit;
                auto tpl = rules.relative_phase_toffoli ? relative_phase_toffoli_template(a, b, part.target())
                                                        : toffoli_template(a, b, part.target());
                out.insert(out.end(), tpl.begin(), tpl.end());
            } else {
                out.push_back(std::move(part));
            }
        }
        return out;
    }
    if (g.num_controls() == 0) return {g};
    if (g.num_controls() > 1) {
        throw UnsupportedGate("cannot lower a unitary with " + std::to_string(g.num_controls()) + " controls");
    }
    const ControlSpec ctl = g.controls().front();
    auto body = controlled_unitary_template(*g.matrix(), ctl.qubit, g.target());
    if (!ctl.is_open()) return body;
    std::vector<Gate> out{Gate::x(ctl.qubit)};
    out.insert(out.end(), body.begin(), body.end());
    out.push_back(Gate::x(ctl.qubit));
    return out;
}

Circuit lower(const Circuit& c, const LoweringRuleset& rules) {
    std::vector<Gate> out;
    out.reserve(c.size());
    for (const auto& g : c.gates()) {
        auto parts = lower_gate(g, rules);
        out.insert(out.end(), std::make_move_iterator(parts.begin()), std::make_move_iterator(parts.end()));
    }
    return Circuit(c.width(), std::move(out), c.roles());
}

// Lowered metrics stream gate by gate so that large circuits are never materialized twice.
Metrics compute_metrics(const Circuit& c) {
    Metrics m;
    m.abstract_depth = abstract_depth(c);
    m.ancillas = c.roles().ancilla.size();
    std::vector<std::size_t> frontier(c.width(), 0);
    for (const auto& g : c.gates()) {
        for (const auto& part : lower_gate(g)) {
            std::size_t layer = frontier[part.target()];
            for (const auto& ctl : part.controls()) layer = std::max(layer, frontier[ctl.qubit]);
            ++layer;
            frontier[part.target()] = layer;
            for (const auto& ctl : part.controls()) frontier[ctl.qubit] = layer;
            m.lowered_depth = std::max(m.lowered_depth, layer);
            if (part.num_controls() == 1) ++m.cx_count;
            ++m.total_gates;
        }
    }
    return m;
}

std::size_t lowered_depth(const Circuit& c) { return compute_metrics(c).lowered_depth; }
std::size_t cx_count(const Circuit& c) { return compute_metrics(c).cx_count; }

}  // namespace mcgs
