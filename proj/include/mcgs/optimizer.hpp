#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mcgs/circuit.hpp"

namespace mcgs {

/// Per-qubit ordered chains of gate indices.
struct DependencyView {
    std::vector<std::vector<std::size_t>> chains;

    static DependencyView build(const Circuit& c);
};

/// Conservative commutation test for X-type gates; false for anything else.
bool commutes(const Gate& a, const Gate& b);

struct CancelOptions {
    /// Maximum number of qubit-sharing gates inspected when looking back for a partner.
    std::size_t lookahead = 1u << 16;
};

/// Removes pairs of identical X-type gates that can be brought together through commuting
/// neighbours; repeats until nothing changes. Non-X-type gates act as barriers on their wires.
std::vector<Gate> cancel_gates(std::span<const Gate> gates, const CancelOptions& opts = {});
Circuit cancel(const Circuit& c, const CancelOptions& opts = {});

}  // namespace mcgs
