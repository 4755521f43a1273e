#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace mcgs {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix: {m00, m01, m10, m11}.
struct Mat2 {
    std::array<Complex, 4> m{Complex{1.0}, Complex{0.0}, Complex{0.0}, Complex{1.0}};

    Complex& operator()(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
    const Complex& operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

inline Mat2 make_mat2(Complex a, Complex b, Complex c, Complex d) { return Mat2{{a, b, c, d}}; }

inline Mat2 identity2() { return Mat2{}; }
inline Mat2 pauli_x() { return make_mat2(0.0, 1.0, 1.0, 0.0); }

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    return make_mat2(a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
                     a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1));
}

inline Mat2 operator*(Complex s, const Mat2& a) {
    return make_mat2(s * a.m[0], s * a.m[1], s * a.m[2], s * a.m[3]);
}

inline Mat2 operator-(const Mat2& a, const Mat2& b) {
    return make_mat2(a.m[0] - b.m[0], a.m[1] - b.m[1], a.m[2] - b.m[2], a.m[3] - b.m[3]);
}

inline Mat2 adjoint(const Mat2& a) {
    return make_mat2(std::conj(a(0, 0)), std::conj(a(1, 0)), std::conj(a(0, 1)), std::conj(a(1, 1)));
}

inline Complex det(const Mat2& a) { return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0); }

/// Largest singular value.
inline double spectral_norm(const Mat2& a) {
    // Eigenvalues of A^dagger A are the roots of s^2 - tr s + det.
    const Mat2 h = adjoint(a) * a;
    const double tr = (h(0, 0) + h(1, 1)).real();
    const double d = std::abs(det(h));
    const double disc = std::max(0.0, tr * tr / 4.0 - d);
    return std::sqrt(std::max(0.0, tr / 2.0 + std::sqrt(disc)));
}

/// Frobenius norm; an upper bound on the spectral norm.
inline double frobenius_norm(const Mat2& a) {
    double s = 0.0;
    for (const auto& z : a.m) s += std::norm(z);
    return std::sqrt(s);
}

inline double unitarity_defect(const Mat2& a) { return frobenius_norm(adjoint(a) * a - identity2()); }

inline bool is_unitary(const Mat2& a, double tol = 1e-12) { return unitarity_defect(a) <= tol; }

inline Mat2 rz(double angle) {
    return make_mat2(std::polar(1.0, -angle / 2.0), 0.0, 0.0, std::polar(1.0, angle / 2.0));
}

inline Mat2 ry(double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    return make_mat2(c, -s, s, c);
}

inline Mat2 phase_gate(double angle) { return make_mat2(1.0, 0.0, 0.0, std::polar(1.0, angle)); }

}  // namespace mcgs
