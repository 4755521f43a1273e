#pragma once

#include <vector>

#include "mcgs/circuit.hpp"

namespace mcgs {

/// Rewrite rules into the {arbitrary 1-qubit, CX} basis.
struct LoweringRuleset {
    /// Use the 3-CX relative-phase Toffoli. It differs from CCX by a diagonal phase, so it is
    /// only sound where the phases provably cancel; nothing in this library enables it.
    bool relative_phase_toffoli = false;
};

/// Lowered form of one gate. Throws UnsupportedGate for X-type gates with more than two
/// controls and for unitaries with more than one control.
std::vector<Gate> lower_gate(const Gate& g, const LoweringRuleset& rules = {});

Circuit lower(const Circuit& c, const LoweringRuleset& rules = {});

/// X on every open control, the gate with all controls closed, X again.
std::vector<Gate> lower_open_controls(const Gate& g);

/// 6-CX Toffoli over H, T, T-dagger.
std::vector<Gate> toffoli_template(Qubit c0, Qubit c1, Qubit target);
/// Margolus gate: CCX up to a relative phase on |101>, 3 CX.
std::vector<Gate> relative_phase_toffoli_template(Qubit c0, Qubit c1, Qubit target);
/// Controlled-U via U = e^{i phi} A X B X C: C, CX, B, CX, A on the target and a phase on the control.
std::vector<Gate> controlled_unitary_template(const Mat2& u, Qubit control, Qubit target);

}  // namespace mcgs
