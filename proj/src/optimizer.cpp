#include "mcgs/optimizer.hpp"

#include <algorithm>
#include <cstdint>

namespace mcgs {

DependencyView DependencyView::build(const Circuit& c) {
    DependencyView view;
    view.chains.resize(c.width());
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (Qubit q : c.gates()[i].support()) view.chains[q].push_back(i);
    }
    return view;
}

bool commutes(const Gate& a, const Gate& b) {
    if (!a.is_x_type() || !b.is_x_type()) return false;
    // Two conditional flips of the same wire; neither reads the wire.
    if (a.target() == b.target()) return true;
    return !b.touches(a.target()) && !a.touches(b.target());
}

namespace {

constexpr std::size_t kDead = static_cast<std::size_t>(-1);

/// One left-to-right pass. Each incoming gate looks back through the gates already kept on its
/// wires for an identical partner, stopping at the first one it does not commute with.
std::vector<Gate> cancel_pass(std::span<const Gate> gates, const CancelOptions& opts, bool& changed) {
    Qubit width = 0;
    for (const auto& g : gates) width = std::max(width, g.max_qubit() + 1);

    std::vector<Gate> kept;
    kept.reserve(gates.size());
    std::vector<char> alive;
    alive.reserve(gates.size());
    std::vector<std::vector<std::size_t>> on_wire(width);

    std::vector<Qubit> wires;
    std::vector<std::size_t> cursor;

    for (const Gate& g : gates) {
        std::size_t partner = kDead;
        if (g.is_x_type()) {
            wires = g.support();
            cursor.assign(wires.size(), 0);
            for (std::size_t k = 0; k < wires.size(); ++k) {
                auto& chain = on_wire[wires[k]];
                while (!chain.empty() && !alive[chain.back()]) chain.pop_back();
                cursor[k] = chain.size();
            }
            std::size_t inspected = 0;
            while (inspected < opts.lookahead) {
                // Latest kept gate on any of the wires.
                std::size_t best = kDead;
                for (std::size_t k = 0; k < wires.size(); ++k) {
                    auto& chain = on_wire[wires[k]];
                    while (cursor[k] > 0 && !alive[chain[cursor[k] - 1]]) --cursor[k];
                    if (cursor[k] > 0) {
                        const std::size_t idx = chain[cursor[k] - 1];
                        if (best == kDead || idx > best) best = idx;
                    }
                }
                if (best == kDead) break;
                for (std::size_t k = 0; k < wires.size(); ++k) {
                    if (cursor[k] > 0 && on_wire[wires[k]][cursor[k] - 1] == best) --cursor[k];
                }
                ++inspected;
                const Gate& h = kept[best];
                if (h.same_operation(g)) {
                    partner = best;
                    break;
                }
                if (!commutes(g, h)) break;
            }
        }
        if (partner != kDead) {
            alive[partner] = 0;
            changed = true;
            continue;
        }
        const std::size_t idx = kept.size();
        kept.push_back(g);
        alive.push_back(1);
        for (Qubit q : g.support()) on_wire[q].push_back(idx);
    }

    std::vector<Gate> out;
    out.reserve(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (alive[i]) out.push_back(std::move(kept[i]));
    }
    return out;
}

}  // namespace

std::vector<Gate> cancel_gates(std::span<const Gate> gates, const CancelOptions& opts) {
    std::vector<Gate> current(gates.begin(), gates.end());
    bool changed = true;
    while (changed) {
        changed = false;
        current = cancel_pass(current, opts, changed);
    }
    return current;
}

Circuit cancel(const Circuit& c, const CancelOptions& opts) {
    return Circuit(c.width(), cancel_gates(c.gates(), opts), c.roles());
}

}  // namespace mcgs
