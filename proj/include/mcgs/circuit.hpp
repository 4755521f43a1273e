#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcgs/matrix2.hpp"

namespace mcgs {

/// Wire index within a circuit.
using Qubit = std::uint32_t;

enum class Polarity : std::uint8_t { closed, open };

struct ControlSpec {
    Qubit qubit = 0;
    Polarity polarity = Polarity::closed;

    bool is_open() const { return polarity == Polarity::open; }
    friend bool operator==(const ControlSpec&, const ControlSpec&) = default;
};

enum class GateKind : std::uint8_t { x_type, unitary_1q };

class UnsupportedGate : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// One circuit element: a (multi-)controlled X, or a (controlled) single-qubit unitary.
///
/// Controls are kept sorted by qubit index so that structurally equal gates compare equal
/// regardless of the order in which their controls were listed.
class Gate {
  public:
    static Gate x(Qubit target);
    static Gate cx(Qubit control, Qubit target);
    static Gate ccx(Qubit c0, Qubit c1, Qubit target);
    static Gate mcx(std::vector<ControlSpec> controls, Qubit target);
    static Gate mcx(std::span<const Qubit> controls, Qubit target);
    static Gate unitary(const Mat2& matrix, Qubit target, std::string label = {});
    static Gate controlled_unitary(const Mat2& matrix, ControlSpec control, Qubit target,
                                   std::string label = {});

    GateKind kind() const { return kind_; }
    bool is_x_type() const { return kind_ == GateKind::x_type; }
    const std::vector<ControlSpec>& controls() const { return controls_; }
    std::size_t num_controls() const { return controls_.size(); }
    bool has_open_control() const;
    Qubit target() const { return target_; }
    /// Present iff kind() == unitary_1q.
    const std::optional<Mat2>& matrix() const { return matrix_; }
    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    /// Control qubits plus target, ascending.
    std::vector<Qubit> support() const;
    bool touches(Qubit q) const;
    bool controls_qubit(Qubit q) const;
    Qubit max_qubit() const;

    Gate inverse() const;

    /// Structural equality ignoring the label.
    bool same_operation(const Gate& other) const;
    friend bool operator==(const Gate& a, const Gate& b) { return a.same_operation(b); }

  private:
    Gate(GateKind kind, std::vector<ControlSpec> controls, Qubit target, std::optional<Mat2> matrix,
         std::string label);

    GateKind kind_;
    std::vector<ControlSpec> controls_;
    Qubit target_;
    std::optional<Mat2> matrix_;
    std::string label_;
};

std::vector<Qubit> support(const Gate& g);

/// Named wire roles of a synthesized circuit.
struct Roles {
    std::vector<Qubit> controls;
    std::vector<Qubit> target;
    std::vector<Qubit> ancilla;

    friend bool operator==(const Roles&, const Roles&) = default;
};

/// Ordered gate list over a fixed-width register.
class Circuit {
  public:
    explicit Circuit(std::size_t width, Roles roles = {});
    Circuit(std::size_t width, std::vector<Gate> gates, Roles roles = {});

    std::size_t width() const { return width_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }
    const Roles& roles() const { return roles_; }
    void set_roles(Roles roles);

    /// Appends in place; throws std::out_of_range if the gate does not fit the register.
    void push_back(Gate g);
    void extend(std::span<const Gate> gates);

    auto begin() const { return gates_.begin(); }
    auto end() const { return gates_.end(); }

    bool is_x_type_only() const;

  private:
    void check_gate(const Gate& g) const;

    std::size_t width_;
    std::vector<Gate> gates_;
    Roles roles_;
};

/// Structural equality: width, gate sequence (labels ignored).
bool same_gates(const Circuit& a, const Circuit& b);

Circuit invert(const Circuit& c);
/// Reverses and inverts a gate list.
std::vector<Gate> invert_gates(std::span<const Gate> gates);
Circuit compose(const Circuit& a, const Circuit& b);
Circuit append(const Circuit& c, Gate g);

/// ASAP layer count where every gate occupies one layer on all qubits of its support.
std::size_t abstract_depth(const Circuit& c);
std::size_t abstract_depth(std::span<const Gate> gates, std::size_t width);

/// Gate counts by number of controls (X-type) plus the total.
std::size_t count_x_type_with_controls(const Circuit& c, std::size_t num_controls);

/// Depth over {1-qubit, CX} after lowering. Throws UnsupportedGate for gates lowering rejects.
std::size_t lowered_depth(const Circuit& c);
std::size_t cx_count(const Circuit& c);

struct Metrics {
    std::size_t abstract_depth = 0;
    std::size_t lowered_depth = 0;
    std::size_t cx_count = 0;
    std::size_t total_gates = 0;  ///< after lowering
    std::size_t ancillas = 0;
};

Metrics compute_metrics(const Circuit& c);

/// OpenQASM-3-like text export.
void write_qasm(const Circuit& c, std::ostream& out);
std::string to_qasm(const Circuit& c);

}  // namespace mcgs
