#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mcgs/circuit.hpp"

namespace mcgs {

enum class Method { linear, recursive_original, recursive_optimized, auto_select };

enum class OrientationRule { none, first_and_third_reversed };

std::string to_string(Method m);
/// Accepts linear | original | recursive_original | optimized | recursive_optimized | auto.
Method parse_method(const std::string& s);

struct SynthesisConfig {
    Method method = Method::auto_select;
    std::size_t base_threshold = 26;
    std::size_t linear_cutover = 51;
    bool optimize_cancellation = true;
    OrientationRule orientation_rule = OrientationRule::first_and_third_reversed;

    /// Recursion levels to expand; gates below are emitted as unexpanded multi-controlled X
    /// (open controls still X-conjugated). Zero means unlimited. Used to inspect block structure.
    std::size_t max_expansion_depth = 0;
    /// Tag every emitted gate with its recursion path ("s3/s0/..."), segment index per level.
    bool label_blocks = false;

    void validate() const;
};

/// Register split of the recursive step over control positions 0..n-1.
struct PartitionPlan {
    std::size_t n = 0;
    std::size_t p = 0;  ///< floor(sqrt(n))
    std::size_t b = 0;  ///< number of groups
    std::size_t r = 0;  ///< (n - 2p) mod p
    std::vector<std::size_t> r0;       ///< first 2p positions
    std::vector<std::size_t> r0_star;  ///< first b positions of r0
    std::vector<std::size_t> r0_b;     ///< r0 minus r0_star
    std::vector<std::vector<std::size_t>> groups;

    /// True when the split makes progress (at least one full group beside r0).
    bool splittable() const { return n >= 2 * p + p && b >= 1; }
};

/// Throws std::invalid_argument for n < 4.
PartitionPlan partition(std::size_t n);

/// Standard layout of every C^nX generator: controls 0..n-1, target n, borrowed ancilla n+1.
struct McxLayout {
    static constexpr Qubit target(std::size_t n) { return static_cast<Qubit>(n); }
    static constexpr Qubit ancilla(std::size_t n) { return static_cast<Qubit>(n + 1); }
    static constexpr std::size_t width(std::size_t n) { return n + 2; }
};

Circuit mcx_linear(std::size_t n);
Circuit mcx_recursive_original(std::size_t n, const SynthesisConfig& cfg = {});
Circuit mcx_recursive_optimized(std::size_t n, const SynthesisConfig& cfg = {});
Circuit mcx_auto(std::size_t n, const SynthesisConfig& cfg = {});
/// Dispatches on cfg.method.
Circuit synthesize_mcx(std::size_t n, const SynthesisConfig& cfg);

/// Gate-list form on arbitrary wires: C^{|controls|}X(controls -> target) using `borrowed` as a
/// dirty ancilla, which is restored on every basis input. `borrowed` must be distinct from all
/// other wires. For recursive methods the optimizer pass is NOT applied here.
std::vector<Gate> emit_mcx_gates(Method method, const SynthesisConfig& cfg, std::span<const Qubit> controls,
                                 Qubit target, Qubit borrowed);

/// Auto-dispatched gate list with the cancellation pass applied; the building block reused by
/// the controlled-U(2) synthesizers.
std::vector<Gate> mcx_auto_gates(const SynthesisConfig& cfg, std::span<const Qubit> controls, Qubit target,
                                 Qubit borrowed);

}  // namespace mcgs
