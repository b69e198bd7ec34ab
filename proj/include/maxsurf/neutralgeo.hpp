#pragma once

#include <array>

#include "maxsurf/core.hpp"

namespace maxsurf {

// Vector in C^4 carrying the neutral products of signature (+,+,-,-).
struct QuadC {
    std::array<Complex, 4> c{};

    Complex& operator[](int i) { return c[i]; }
    const Complex& operator[](int i) const { return c[i]; }

    QuadC operator+(const QuadC& o) const;
    QuadC operator-(const QuadC& o) const;
    QuadC operator-() const;
    QuadC operator*(Complex s) const;
    QuadC operator/(Complex s) const;

    double max_abs() const;
};

QuadC operator*(Complex s, const QuadC& a);
QuadC conj(const QuadC& a);
QuadC real_part(const QuadC& a);
QuadC imag_part(const QuadC& a);

// bilinear product a·b = a1 b1 + a2 b2 - a3 b3 - a4 b4
Complex bilinear(const QuadC& a, const QuadC& b);

// Hermitian product a·conj(b) with the same signature
Complex herm(const QuadC& a, const QuadC& b);

// squared Hermitian norm |a1|^2 + |a2|^2 - |a3|^2 - |a4|^2
double herm_norm_sq(const QuadC& a);

// Component of phi_prime orthogonal (in both products) to span{phi, conj(phi)}:
// phi_prime - (phi_prime·conj(phi) / ||phi||^2) phi.
// Requires ||phi||^2 > tol and phi·phi ≈ 0.
QuadC normal_project(const QuadC& phi, const QuadC& phi_prime, double tol = 1e-14);

// Second fundamental form along the coordinate directions:
// sigma(x_u,x_u) = Re(phi_prime^perp), sigma(x_u,x_v) = -Im(phi_prime^perp).
struct SecondFundamental {
    QuadC sigma_uu;
    QuadC sigma_uv;
};
SecondFundamental second_fundamental(const QuadC& phi, const QuadC& phi_prime, double tol = 1e-14);

// determinant of the 4x4 matrix with columns a, b, c, d
Complex det4(const QuadC& a, const QuadC& b, const QuadC& c, const QuadC& d);

// Real vector in the neutral 4-space.
struct Vec4 {
    std::array<double, 4> v{};
    double& operator[](int i) { return v[i]; }
    const double& operator[](int i) const { return v[i]; }
};

// Affine motion x -> A x + b with A preserving the neutral metric.
struct Motion4 {
    std::array<std::array<double, 4>, 4> a{};  // linear part, row major
    Vec4 translation{};
    int proper = 1;        // sign of det A
    int orthochronous = 1; // +1 when the orientation of time-like planes is kept

    static Motion4 identity();

    Vec4 apply(const Vec4& x) const;
    QuadC apply_linear(const QuadC& x) const;  // linear part on complexified vectors
    Motion4 compose(const Motion4& o) const;   // this after o

    double det() const;
    // max-norm of Aᵀ η A - η with η = diag(1,1,-1,-1)
    double metric_defect() const;
};

// 2x2 complex matrix.
struct Mat2c {
    std::array<std::array<Complex, 2>, 2> m{};
    Mat2c operator*(const Mat2c& o) const;
};

// Element of the unit group of the indefinite Hermitian plane, stored as the
// matrix [[conj(a), b], [conj(b), a]] with pseudo-determinant |a|^2-|b|^2 = ±1.
struct Spinor2 {
    Complex a, b;
    int sign;

    Spinor2(Complex a_, Complex b_, double tol = 1e-12);

    Mat2c matrix() const;
    // adjoint with respect to the indefinite product (J M^H J, J = diag(1,-1))
    Mat2c adjoint() const;
    Spinor2 operator*(const Spinor2& o) const;
    Spinor2 operator-() const;
};

// x -> S with det S = -x·x
Mat2c spinor_matrix(const QuadC& x);
QuadC spinor_vector(const Mat2c& s);

// 4x4 motion generated by S -> U S V* on the matrices of the basis vectors.
// Both factors must have pseudo-determinant +1; the result is a proper
// orthochronous motion with zero translation.
Motion4 spinor_to_motion(const Spinor2& u, const Spinor2& v, double tol = 1e-12);

}  // namespace maxsurf
