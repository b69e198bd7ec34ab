#include "maxsurf/neutralgeo.hpp"

#include <cmath>

namespace maxsurf {

namespace {
constexpr double kEta[4] = {1.0, 1.0, -1.0, -1.0};
}

QuadC QuadC::operator+(const QuadC& o) const {
    QuadC r;
    for (int i = 0; i < 4; ++i) r.c[i] = c[i] + o.c[i];
    return r;
}

QuadC QuadC::operator-(const QuadC& o) const {
    QuadC r;
    for (int i = 0; i < 4; ++i) r.c[i] = c[i] - o.c[i];
    return r;
}

QuadC QuadC::operator-() const {
    QuadC r;
    for (int i = 0; i < 4; ++i) r.c[i] = -c[i];
    return r;
}

QuadC QuadC::operator*(Complex s) const {
    QuadC r;
    for (int i = 0; i < 4; ++i) r.c[i] = c[i] * s;
    return r;
}

QuadC QuadC::operator/(Complex s) const {
    QuadC r;
    for (int i = 0; i < 4; ++i) r.c[i] = c[i] / s;
    return r;
}

double QuadC::max_abs() const {
    double m = 0.0;
    for (const Complex& x : c) m = std::max(m, std::abs(x));
    return m;
}

QuadC operator*(Complex s, const QuadC& a) { return a * s; }

QuadC conj(const QuadC& a) {
    QuadC r;
    for (int i = 0; i < 4; ++i) r.c[i] = std::conj(a.c[i]);
    return r;
}

QuadC real_part(const QuadC& a) {
    QuadC r;
    for (int i = 0; i < 4; ++i) r.c[i] = a.c[i].real();
    return r;
}

QuadC imag_part(const QuadC& a) {
    QuadC r;
    for (int i = 0; i < 4; ++i) r.c[i] = a.c[i].imag();
    return r;
}

Complex bilinear(const QuadC& a, const QuadC& b) {
    return a.c[0] * b.c[0] + a.c[1] * b.c[1] - a.c[2] * b.c[2] - a.c[3] * b.c[3];
}

Complex herm(const QuadC& a, const QuadC& b) { return bilinear(a, conj(b)); }

double herm_norm_sq(const QuadC& a) {
    return std::norm(a.c[0]) + std::norm(a.c[1]) - std::norm(a.c[2]) - std::norm(a.c[3]);
}

QuadC normal_project(const QuadC& phi, const QuadC& phi_prime, double tol) {
    double n2 = herm_norm_sq(phi);
    if (!(n2 > tol)) throw DomainError("degenerate metric: ||phi||^2 <= tolerance");
    Complex coeff = herm(phi_prime, phi) / n2;
    return phi_prime - coeff * phi;
}

SecondFundamental second_fundamental(const QuadC& phi, const QuadC& phi_prime, double tol) {
    QuadC perp = normal_project(phi, phi_prime, tol);
    return {real_part(perp), -imag_part(perp)};
}

namespace {

Complex det3(Complex a11, Complex a12, Complex a13,
             Complex a21, Complex a22, Complex a23,
             Complex a31, Complex a32, Complex a33) {
    return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
           a13 * (a21 * a32 - a22 * a31);
}

}  // namespace

Complex det4(const QuadC& a, const QuadC& b, const QuadC& c, const QuadC& d) {
    const QuadC* col[4] = {&a, &b, &c, &d};
    auto m = [&](int i, int j) { return (*col[j])[i]; };
    Complex det = 0.0;
    double sign = 1.0;
    for (int j = 0; j < 4; ++j) {
        int jj[3], k = 0;
        for (int q = 0; q < 4; ++q)
            if (q != j) jj[k++] = q;
        det += sign * m(0, j) *
               det3(m(1, jj[0]), m(1, jj[1]), m(1, jj[2]),
                    m(2, jj[0]), m(2, jj[1]), m(2, jj[2]),
                    m(3, jj[0]), m(3, jj[1]), m(3, jj[2]));
        sign = -sign;
    }
    return det;
}

Motion4 Motion4::identity() {
    Motion4 m;
    for (int i = 0; i < 4; ++i) m.a[i][i] = 1.0;
    return m;
}

Vec4 Motion4::apply(const Vec4& x) const {
    Vec4 r;
    for (int i = 0; i < 4; ++i) {
        double s = translation[i];
        for (int j = 0; j < 4; ++j) s += a[i][j] * x[j];
        r[i] = s;
    }
    return r;
}

QuadC Motion4::apply_linear(const QuadC& x) const {
    QuadC r;
    for (int i = 0; i < 4; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < 4; ++j) s += a[i][j] * x[j];
        r[i] = s;
    }
    return r;
}

Motion4 Motion4::compose(const Motion4& o) const {
    Motion4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += a[i][k] * o.a[k][j];
            r.a[i][j] = s;
        }
    Vec4 t = {};
    for (int i = 0; i < 4; ++i) {
        double s = translation[i];
        for (int j = 0; j < 4; ++j) s += a[i][j] * o.translation[j];
        t[i] = s;
    }
    r.translation = t;
    r.proper = proper * o.proper;
    r.orthochronous = orthochronous * o.orthochronous;
    return r;
}

double Motion4::det() const {
    QuadC col[4];
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) col[j][i] = a[i][j];
    return det4(col[0], col[1], col[2], col[3]).real();
}

double Motion4::metric_defect() const {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += a[k][i] * kEta[k] * a[k][j];
            double target = (i == j) ? kEta[i] : 0.0;
            worst = std::max(worst, std::abs(s - target));
        }
    return worst;
}

Mat2c Mat2c::operator*(const Mat2c& o) const {
    Mat2c r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
    return r;
}

Spinor2::Spinor2(Complex a_, Complex b_, double tol) : a(a_), b(b_) {
    double d = std::norm(a) - std::norm(b);
    sign = d >= 0.0 ? 1 : -1;
    if (std::abs(d - sign) > tol) {
        throw DomainError("spinor factor must have pseudo-determinant +1 or -1");
    }
}

Mat2c Spinor2::matrix() const {
    Mat2c s;
    s.m = {{{std::conj(a), b}, {std::conj(b), a}}};
    return s;
}

Mat2c Spinor2::adjoint() const {
    Mat2c s;
    s.m = {{{a, -b}, {-std::conj(b), std::conj(a)}}};
    return s;
}

Spinor2 Spinor2::operator*(const Spinor2& o) const {
    // [[conj(a),b],[conj(b),a]] * [[conj(c),d],[conj(d),c]] has the same shape
    Complex na = a * o.a + std::conj(b) * o.b;
    Complex nb = std::conj(a) * o.b + b * o.a;
    return Spinor2(na, nb);
}

Spinor2 Spinor2::operator-() const { return Spinor2(-a, -b); }

Mat2c spinor_matrix(const QuadC& x) {
    const Complex i(0.0, 1.0);
    Mat2c s;
    s.m = {{{x[2] + i * x[3], x[0] + i * x[1]}, {x[0] - i * x[1], x[2] - i * x[3]}}};
    return s;
}

QuadC spinor_vector(const Mat2c& s) {
    const Complex i(0.0, 1.0);
    QuadC x;
    x[0] = (s.m[0][1] + s.m[1][0]) / 2.0;
    x[1] = (s.m[0][1] - s.m[1][0]) / (2.0 * i);
    x[2] = (s.m[0][0] + s.m[1][1]) / 2.0;
    x[3] = (s.m[0][0] - s.m[1][1]) / (2.0 * i);
    return x;
}

Motion4 spinor_to_motion(const Spinor2& u, const Spinor2& v, double tol) {
    if (u.sign != 1 || v.sign != 1) {
        throw DomainError("spinor_to_motion requires special unitary factors (pseudo-determinant +1)");
    }
    Mat2c um = u.matrix();
    Mat2c vs = v.adjoint();
    Motion4 r;
    double scale = std::max({1.0, std::norm(u.a), std::norm(v.a)});
    for (int j = 0; j < 4; ++j) {
        QuadC e;
        e[j] = 1.0;
        QuadC img = spinor_vector(um * spinor_matrix(e) * vs);
        for (int i = 0; i < 4; ++i) {
            if (std::abs(img[i].imag()) > tol * scale) {
                throw DomainError("spinor action produced a non-real motion column");
            }
            r.a[i][j] = img[i].real();
        }
    }
    if (r.metric_defect() > tol * scale * scale) {
        throw DomainError("spinor action does not preserve the metric");
    }
    r.proper = 1;
    r.orthochronous = 1;
    return r;
}

}  // namespace maxsurf
