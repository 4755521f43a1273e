#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mcgs/circuit.hpp"

namespace mcgs {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;
inline constexpr std::size_t kMaxDenseWidth = 11;
inline constexpr std::size_t kMaxStatevectorWidth = 22;
inline constexpr std::size_t kMaxExhaustiveWidth = 20;

/// Computational basis state; bit i is qubit i.
class BasisState {
  public:
    BasisState() = default;
    explicit BasisState(std::size_t width) : bits_(width, 0) {}
    static BasisState from_index(std::size_t width, std::uint64_t index);

    std::size_t width() const { return bits_.size(); }
    bool get(std::size_t q) const { return bits_[q] != 0; }
    void set(std::size_t q, bool v) { bits_[q] = v ? 1 : 0; }
    void flip(std::size_t q) { bits_[q] ^= 1; }

    /// Bit string, qubit 0 first.
    std::string str() const;
    friend bool operator==(const BasisState&, const BasisState&) = default;

  private:
    std::vector<std::uint8_t> bits_;
};

/// Throws UnsupportedGate on non-X-type gates.
BasisState simulate_reversible(const Circuit& c, const BasisState& x);

/// Bit-sliced simulation: lanes[q] holds qubit q for 64 independent inputs.
void simulate_reversible_lanes(const Circuit& c, std::vector<std::uint64_t>& lanes);

enum class CheckMode { exhaustive, sampled, unitary };
std::string to_string(CheckMode m);

struct Counterexample {
    std::string input;
    std::string expected;
    std::string got;
};

struct EquivalenceReport {
    CheckMode mode = CheckMode::exhaustive;
    std::size_t checked = 0;
    std::vector<Counterexample> failures;
    std::size_t failure_count = 0;  ///< may exceed failures.size(), which is truncated
    double max_distance = 0.0;
    double tolerance = 0.0;
    std::uint64_t seed = kDefaultSeed;

    bool passed() const { return failure_count == 0 && max_distance <= tolerance; }
};

void write_report(const EquivalenceReport& r, std::ostream& out);

struct McxCheckOptions {
    std::optional<CheckMode> mode;  ///< default: exhaustive when width <= 20, else sampled
    std::size_t samples = 1000;
    std::uint64_t seed = kDefaultSeed;
    std::size_t max_recorded_failures = 8;
};

/// Verifies a circuit against C^nX with the standard layout (controls 0..n-1, target n,
/// ancilla n+1): target flips iff all controls are 1, every other bit unchanged.
EquivalenceReport check_mcx(const Circuit& c, std::size_t n, const McxCheckOptions& opts = {});

/// Critical inputs of the sampled mode: all-ones controls with target 0 and 1, all-zero controls,
/// and each single-zero control pattern, each with ancilla 0 and 1 (2n + 6 states).
std::vector<BasisState> critical_patterns(std::size_t n);

using DenseMatrix = Eigen::MatrixXcd;

/// Full unitary; throws ResourceError when width exceeds kMaxDenseWidth.
DenseMatrix dense_unitary(const Circuit& c);
/// Applies c to a state vector of dimension 2^width (width <= kMaxStatevectorWidth).
void apply_to_state(const Circuit& c, Eigen::VectorXcd& state);
/// Left-multiplies `m` (2^width rows) by the gate's unitary.
void apply_gate_rows(const Gate& g, DenseMatrix& m);

/// Largest singular value of a - b.
double spectral_distance(const DenseMatrix& a, const DenseMatrix& b);
/// sqrt(||a-b||_1 ||a-b||_inf) >= spectral distance; cheap.
double spectral_distance_upper_bound(const DenseMatrix& a, const DenseMatrix& b);
/// Exact spectral distance unless the cheap bound already certifies `tolerance`.
double spectral_distance_within(const DenseMatrix& a, const DenseMatrix& b, double tolerance);

/// Unitary of a single-target controlled 2x2 operation: U acts on `target` iff every control is 1.
DenseMatrix controlled_unitary_matrix(std::size_t width, std::span<const Qubit> controls, Qubit target,
                                      const Mat2& u);

EquivalenceReport check_unitary(const Circuit& c, const DenseMatrix& expected, double tolerance);

}  // namespace mcgs
