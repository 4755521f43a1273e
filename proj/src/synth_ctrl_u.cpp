#include "mcgs/synth_ctrl_u.hpp"

#include <cmath>
#include <vector>

namespace mcgs {

namespace {

void require_su2(const Mat2& w) {
    if (!is_unitary(w, 1e-12)) throw DomainError("matrix is not unitary to 1e-12");
    if (std::abs(det(w) - Complex{1.0}) > 1e-10) throw DomainError("matrix determinant is not 1");
}

}  // namespace

ZyzAngles zyz_decompose(const Mat2& w) {
    require_su2(w);
    // W = [[a, -conj(b)], [b, conj(a)]], a = e^{-i(alpha+beta)/2} cos(theta/2),
    // b = e^{i(alpha-beta)/2} sin(theta/2).
    const Complex a = w(0, 0);
    const Complex b = w(1, 0);
    ZyzAngles z;
    z.theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
    constexpr double tiny = 1e-15;
    if (std::abs(b) <= tiny) {
        z.alpha = -2.0 * std::arg(a);
        z.beta = 0.0;
        z.theta = 0.0;
    } else if (std::abs(a) <= tiny) {
        z.alpha = 2.0 * std::arg(b);
        z.beta = 0.0;
    } else {
        z.alpha = std::arg(b) - std::arg(a);
        z.beta = -std::arg(a) - std::arg(b);
    }
    return z;
}

Mat2 zyz_matrix(const ZyzAngles& z) { return rz(z.alpha) * ry(z.theta) * rz(z.beta); }

AbcFactors abc_factors(const Mat2& w) {
    const ZyzAngles z = zyz_decompose(w);
    return AbcFactors{rz(z.alpha) * ry(z.theta / 2.0), ry(-z.theta / 2.0) * rz(-(z.alpha + z.beta) / 2.0),
                      rz((z.beta - z.alpha) / 2.0)};
}

Mat2 sqrt_unitary(const Mat2& u) {
    if (!is_unitary(u, 1e-12)) throw DomainError("sqrt_unitary: matrix is not unitary");
    // Eigenvalues from the characteristic polynomial, projected back onto the unit circle.
    const Complex tr = u(0, 0) + u(1, 1);
    const Complex d = det(u);
    const Complex disc = std::sqrt(tr * tr / 4.0 - d);
    Complex l1 = tr / 2.0 + disc;
    Complex l2 = tr / 2.0 - disc;
    l1 /= std::abs(l1);
    l2 /= std::abs(l2);
    const Complex s1 = std::polar(1.0, std::arg(l1) / 2.0);
    const Complex s2 = std::polar(1.0, std::arg(l2) / 2.0);
    // Cayley-Hamilton: V = (U + s1 s2 I) / (s1 + s2); s1 + s2 != 0 for principal roots.
    const Complex s = s1 * s2;
    return (Complex{1.0} / (s1 + s2)) * make_mat2(u(0, 0) + s, u(0, 1), u(1, 0), u(1, 1) + s);
}

namespace {

std::vector<Qubit> first_qubits(std::size_t count) {
    std::vector<Qubit> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<Qubit>(i);
    return out;
}

Roles ctrl_u_roles(std::size_t n) {
    Roles roles;
    roles.controls = first_qubits(n);
    roles.target = {static_cast<Qubit>(n)};
    return roles;
}

}  // namespace

Circuit mcsu2(std::size_t n, const Mat2& w, const SynthesisConfig& cfg) {
    if (n < 1) throw std::invalid_argument("mcsu2 needs at least one control");
    const AbcFactors f = abc_factors(w);
    const auto t = static_cast<Qubit>(n);
    Circuit c(n + 1, ctrl_u_roles(n));
    if (n == 1) {
        c.push_back(Gate::controlled_unitary(w, {0, Polarity::closed}, t, "w"));
        return c;
    }
    const auto last = static_cast<Qubit>(n - 1);
    const auto rest = first_qubits(n - 1);
    const auto flip = mcx_auto_gates(cfg, rest, t, last);
    // Time order C, X^{(n-1)}, B, X^{(n-1)}, A realizes A X B X C when all controls are set.
    c.push_back(Gate::controlled_unitary(f.c, {last, Polarity::closed}, t, "c"));
    c.extend(flip);
    c.push_back(Gate::controlled_unitary(f.b, {last, Polarity::closed}, t, "b"));
    c.extend(flip);
    c.push_back(Gate::controlled_unitary(f.a, {last, Polarity::closed}, t, "a"));
    return c;
}

std::pair<Circuit, ApproxPlan> mcu2_approx(std::size_t n, const Mat2& u, double epsilon,
                                           const SynthesisConfig& cfg) {
    if (n < 1) throw std::invalid_argument("mcu2_approx needs at least one control");
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    if (!is_unitary(u, 1e-12)) throw DomainError("mcu2_approx: matrix is not unitary");

    const auto t = static_cast<Qubit>(n);
    Circuit c(n + 1, ctrl_u_roles(n));
    ApproxPlan plan;
    plan.epsilon = epsilon;

    // Remaining gate after j steps: C^{n-j}(V_j), V_j = U^{1/2^j}, on controls 0..n-j-1.
    Mat2 v = u;
    std::size_t m = n;
    for (;;) {
        const double gap = spectral_norm(v - identity2());
        if (gap <= epsilon) {
            plan.residual_error = gap;
            break;
        }
        if (m == 1) {
            c.push_back(Gate::controlled_unitary(v, {0, Polarity::closed}, t, "v"));
            plan.residual_error = 0.0;
            break;
        }
        const Mat2 root = sqrt_unitary(v);
        const auto pivot = static_cast<Qubit>(m - 1);
        const auto rest = first_qubits(m - 1);
        const auto flip = mcx_auto_gates(cfg, rest, pivot, t);
        const std::string tag = "v" + std::to_string(plan.steps + 1);
        c.push_back(Gate::controlled_unitary(root, {pivot, Polarity::closed}, t, tag));
        c.extend(flip);
        c.push_back(Gate::controlled_unitary(adjoint(root), {pivot, Polarity::closed}, t, tag + "_dg"));
        c.extend(flip);
        ++plan.steps;
        v = root;
        --m;
    }
    return {std::move(c), plan};
}

}  // namespace mcgs
