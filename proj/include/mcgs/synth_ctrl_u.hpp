#pragma once

#include <cstddef>
#include <utility>

#include "mcgs/circuit.hpp"
#include "mcgs/synth_mcx.hpp"

namespace mcgs {

/// W = Rz(alpha) Ry(theta) Rz(beta).
struct ZyzAngles {
    double alpha = 0.0;
    double theta = 0.0;
    double beta = 0.0;
};

/// W = A X B X C with A B C = I.
struct AbcFactors {
    Mat2 a;
    Mat2 b;
    Mat2 c;
};

struct ApproxPlan {
    std::size_t steps = 0;
    /// Spectral norm of (dropped V) - I; zero when nothing was dropped.
    double residual_error = 0.0;
    double epsilon = 0.0;
};

/// Throws DomainError unless W is unitary with unit determinant (to 1e-10).
ZyzAngles zyz_decompose(const Mat2& w);
Mat2 zyz_matrix(const ZyzAngles& angles);
AbcFactors abc_factors(const Mat2& w);

/// Principal square root: eigenphases halved into (-pi/2, pi/2].
Mat2 sqrt_unitary(const Mat2& u);

/// C^n(W), W in SU(2), on controls 0..n-1 and target n; no extra wire. The two C^{n-1}X gates
/// borrow control n-1.
Circuit mcsu2(std::size_t n, const Mat2& w, const SynthesisConfig& cfg = {});

/// Approximate C^n(U), U in U(2), via the square-root recursion, halted once the remaining
/// multi-controlled root is within epsilon of the identity. Width n+1.
std::pair<Circuit, ApproxPlan> mcu2_approx(std::size_t n, const Mat2& u, double epsilon,
                                           const SynthesisConfig& cfg = {});

}  // namespace mcgs
