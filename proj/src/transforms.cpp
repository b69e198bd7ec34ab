#include "maxsurf/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace maxsurf {

namespace {
const Complex kI(0.0, 1.0);
}

MoebiusParams::MoebiusParams(Complex a_, Complex b_, double tol) : a(a_), b(b_) {
    double d = std::norm(a) - std::norm(b);
    sign = d >= 0.0 ? 1 : -1;
    if (std::abs(d - sign) > tol) {
        throw DomainError("moebius parameters must satisfy |a|^2 - |b|^2 = +1 or -1");
    }
}

HolExpr moebius_apply(const MoebiusParams& m, const HolExpr& g) {
    HolExpr A = HolExpr::constant(m.a);
    HolExpr Ab = HolExpr::constant(std::conj(m.a));
    HolExpr B = HolExpr::constant(m.b);
    HolExpr Bb = HolExpr::constant(std::conj(m.b));
    return (A * g + Bb) / (B * g + Ab);
}

HolPair motion_transform_pair(const MotionSpec& ms, const HolPair& p) {
    if (ms.m1.sign != ms.m2.sign) {
        throw DomainError("both moebius factors of a motion must have the same sign");
    }
    const HolExpr& s1 = ms.swap_generators ? p.g2 : p.g1;
    const HolExpr& s2 = ms.swap_generators ? p.g1 : p.g2;
    HolPair out;
    out.g1 = moebius_apply(ms.m1, s1);
    out.g2 = moebius_apply(ms.m2, s2);
    out.branch_sign = p.branch_sign;
    out.type = p.type;
    return out;
}

InvariantSample canonical_invariants(const EvalPair& p, Complex s) {
    GenValues gv{p.g1.value(s), p.g1.deriv(s), p.g2.value(s), p.g2.deriv(s)};
    return canonical_invariants(gv, s);
}

ChangedPair coordinate_change_pair(const HolPair& p, Complex delta, Complex c, bool antiholo) {
    bool delta_ok = false;
    for (Complex d : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
        if (delta == d) delta_ok = true;
    }
    if (!delta_ok) throw DomainError("delta must be one of +1, -1, +i, -i");

    if (!antiholo) {
        HolExpr inner = HolExpr::constant(delta) * HolExpr::variable() + HolExpr::constant(c);
        HolPair out;
        out.g1 = p.g1.compose(inner);
        out.g2 = p.g2.compose(inner);
        out.branch_sign = p.branch_sign;
        out.type = p.type;
        return out;
    }

    // t = delta * conj(s) + c:  g~(s) = 1 / conj(g(delta*conj(s) + c))
    auto make = [delta, c](HolExpr g) {
        HolExpr dg = g.derivative();
        EvalGen e;
        e.value = [g, delta, c](Complex s) {
            Complex t = delta * std::conj(s) + c;
            Complex G = std::conj(g(t));
            if (G == 0.0) throw EvalError("division by zero in the reflected generator");
            return 1.0 / G;
        };
        e.deriv = [g, dg, delta, c](Complex s) {
            Complex t = delta * std::conj(s) + c;
            Complex G = std::conj(g(t));
            if (G == 0.0) throw EvalError("division by zero in the reflected generator");
            Complex Gp = std::conj(dg(t) * delta);
            return -Gp / (G * G);
        };
        return e;
    };
    EvalPair out;
    out.g1 = make(p.g1);
    out.g2 = make(p.g2);
    out.branch_sign = p.branch_sign;
    out.type = p.type;
    return out;
}

HolPair homothety_pair(const HolPair& p, double k) {
    if (!(k > 0.0)) throw DomainError("homothety coefficient must be positive");
    HolExpr inner = HolExpr::constant(1.0 / std::sqrt(k)) * HolExpr::variable();
    HolPair out;
    out.g1 = p.g1.compose(inner);
    out.g2 = p.g2.compose(inner);
    out.branch_sign = p.branch_sign;
    out.type = p.type;
    return out;
}

HolPair associated_pair(const HolPair& p, double theta) {
    HolExpr inner = HolExpr::constant(std::polar(1.0, 0.5 * theta)) * HolExpr::variable();
    HolPair out;
    out.g1 = p.g1.compose(inner);
    out.g2 = p.g2.compose(inner);
    out.branch_sign = p.branch_sign;
    out.type = p.type;
    return out;
}

namespace {

// smallest eigenvector of a symmetric 4x4 matrix by cyclic Jacobi rotations
std::array<double, 4> smallest_eigvec_sym4(std::array<std::array<double, 4>, 4> A) {
    std::array<std::array<double, 4>, 4> V{};
    for (int i = 0; i < 4; ++i) V[i][i] = 1.0;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) off += A[i][j] * A[i][j];
        if (off < 1e-30) break;
        for (int pq = 0; pq < 6; ++pq) {
            static const int P[6] = {0, 0, 0, 1, 1, 2};
            static const int Q[6] = {1, 2, 3, 2, 3, 3};
            int p = P[pq], q = Q[pq];
            if (std::abs(A[p][q]) < 1e-300) continue;
            double theta = 0.5 * (A[q][q] - A[p][p]) / A[p][q];
            double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
            double cs = 1.0 / std::sqrt(t * t + 1.0);
            double sn = t * cs;
            for (int k = 0; k < 4; ++k) {
                double akp = A[k][p], akq = A[k][q];
                A[k][p] = cs * akp - sn * akq;
                A[k][q] = sn * akp + cs * akq;
            }
            for (int k = 0; k < 4; ++k) {
                double apk = A[p][k], aqk = A[q][k];
                A[p][k] = cs * apk - sn * aqk;
                A[q][k] = sn * apk + cs * aqk;
            }
            for (int k = 0; k < 4; ++k) {
                double vkp = V[k][p], vkq = V[k][q];
                V[k][p] = cs * vkp - sn * vkq;
                V[k][q] = sn * vkp + cs * vkq;
            }
        }
    }
    int best = 0;
    for (int i = 1; i < 4; ++i)
        if (A[i][i] < A[best][best]) best = i;
    return {V[0][best], V[1][best], V[2][best], V[3][best]};
}

// Least-squares Moebius parameters from samples (g_k, gh_k) of gh = (a g + conj b)/(b g + conj a).
// The defining relation is linear in (a, conj a, b, conj b):
//   a g - conj(a) gh - b g gh + conj(b) = 0.
std::optional<MoebiusParams> fit_moebius(const std::vector<std::pair<Complex, Complex>>& samples) {
    std::array<std::array<double, 4>, 4> M{};
    auto accumulate = [&](const std::array<Complex, 4>& row) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                M[i][j] += row[i].real() * row[j].real() + row[i].imag() * row[j].imag();
    };
    for (const auto& [g, gh] : samples) {
        // coefficients of x = (Re a, Im a, Re b, Im b)
        std::array<Complex, 4> row = {g - gh, kI * (g + gh), 1.0 - g * gh, -kI * (1.0 + g * gh)};
        accumulate(row);
    }
    std::array<double, 4> x = smallest_eigvec_sym4(M);
    Complex a(x[0], x[1]), b(x[2], x[3]);
    double d = std::norm(a) - std::norm(b);
    if (std::abs(d) < 1e-8) return std::nullopt;
    double scale = 1.0 / std::sqrt(std::abs(d));
    return MoebiusParams(a * scale, b * scale);
}

Complex moebius_value(const MoebiusParams& m, Complex g) {
    return (m.a * g + std::conj(m.b)) / (m.b * g + std::conj(m.a));
}

// three well-separated valid grid points
std::vector<Complex> fit_points(const GridSpec& grid, const Mask& mask) {
    const double rel[][2] = {{0.15, 0.2}, {0.85, 0.35}, {0.45, 0.85},
                             {0.2, 0.7},  {0.75, 0.8},  {0.5, 0.45}};
    std::vector<Complex> pts;
    for (const auto& r : rel) {
        int iu = std::clamp(int(r[0] * (grid.nu - 1)), 0, grid.nu - 1);
        int iv = std::clamp(int(r[1] * (grid.nv - 1)), 0, grid.nv - 1);
        if (!mask[grid.index(iu, iv)]) continue;
        pts.push_back(grid.point(iu, iv));
        if (pts.size() == 3) return pts;
    }
    for (int iv = 0; iv < grid.nv && pts.size() < 3; iv += std::max(1, grid.nv / 7))
        for (int iu = 0; iu < grid.nu && pts.size() < 3; iu += std::max(1, grid.nu / 7)) {
            if (!mask[grid.index(iu, iv)]) continue;
            Complex c = grid.point(iu, iv);
            bool dup = false;
            for (Complex q : pts) dup = dup || std::abs(q - c) < grid.h;
            if (!dup) pts.push_back(c);
        }
    if (pts.size() < 3) throw DomainError("not enough valid grid points to fit a moebius map");
    return pts;
}

}  // namespace

HyperplaneResult hyperplane_test(const HolPair& p, const GridSpec& grid, double tol) {
    InvariantField inv = invariant_field(p, grid);
    HyperplaneResult res;
    int n_valid = 0;
    for (int i = 0; i < grid.size(); ++i) {
        if (!inv.mask[i]) continue;
        ++n_valid;
        res.max_abs_kappa = std::max(res.max_abs_kappa, std::abs(inv.kappa[i]));
    }
    if (n_valid == 0) throw DomainError("no valid grid points");
    res.in_hyperplane = res.max_abs_kappa <= tol;
    if (!res.in_hyperplane) return res;

    std::vector<Complex> pts = fit_points(grid, inv.mask);
    std::vector<std::pair<Complex, Complex>> samples;
    for (Complex t : pts) samples.emplace_back(p.g1(t), p.g2(t));
    std::optional<MoebiusParams> m = fit_moebius(samples);
    if (!m || m->sign != 1) {
        throw DomainError("kappa vanishes but no unit-circle-preserving moebius relation was found");
    }
    double worst = 0.0;
    for (int iv = 0; iv < grid.nv; ++iv)
        for (int iu = 0; iu < grid.nu; ++iu) {
            if (!inv.mask[grid.index(iu, iv)]) continue;
            Complex t = grid.point(iu, iv);
            worst = std::max(worst, std::abs(p.g2(t) - moebius_value(*m, p.g1(t))));
        }
    res.fit_residual = worst;
    if (worst > std::max(tol, 1e-9)) {
        throw DomainError("kappa vanishes but the fitted moebius relation fails globally");
    }
    res.moebius = m;
    return res;
}

std::optional<std::pair<MoebiusParams, MoebiusParams>> equivalence_test(const HolPair& pa,
                                                                        const HolPair& pb,
                                                                        const GridSpec& grid,
                                                                        double tol) {
    InvariantField fa = invariant_field(pa, grid);
    InvariantField fb = invariant_field(pb, grid);

    double sum2 = 0.0, diff = 0.0;
    int n = 0;
    for (int i = 0; i < grid.size(); ++i) {
        if (!fa.mask[i] || !fb.mask[i]) continue;
        sum2 += fa.K[i] * fa.K[i] + fa.kappa[i] * fa.kappa[i];
        diff = std::max(diff, std::abs(fa.K[i] - fb.K[i]));
        diff = std::max(diff, std::abs(fa.kappa[i] - fb.kappa[i]));
        ++n;
    }
    if (n == 0) throw DomainError("the two pairs share no valid grid points");
    double scale = std::sqrt(sum2 / (2 * n));
    if (diff > tol * std::max(scale, 1e-300)) return std::nullopt;

    Mask both(grid.size(), 0);
    for (int i = 0; i < grid.size(); ++i) both[i] = fa.mask[i] && fb.mask[i];
    std::vector<Complex> pts = fit_points(grid, both);

    auto fit_one = [&](const HolExpr& ga, const HolExpr& gb) {
        std::vector<std::pair<Complex, Complex>> samples;
        for (Complex t : pts) samples.emplace_back(ga(t), gb(t));
        return fit_moebius(samples);
    };
    std::optional<MoebiusParams> m1 = fit_one(pa.g1, pb.g1);
    std::optional<MoebiusParams> m2 = fit_one(pa.g2, pb.g2);
    if (!m1 || !m2 || m1->sign != m2->sign) {
        throw DomainError("invariant fields agree but no moebius relation was found; tol too loose");
    }
    double worst = 0.0;
    double gscale = 0.0;
    for (int iv = 0; iv < grid.nv; ++iv)
        for (int iu = 0; iu < grid.nu; ++iu) {
            if (!both[grid.index(iu, iv)]) continue;
            Complex t = grid.point(iu, iv);
            worst = std::max(worst, std::abs(pb.g1(t) - moebius_value(*m1, pa.g1(t))));
            worst = std::max(worst, std::abs(pb.g2(t) - moebius_value(*m2, pa.g2(t))));
            gscale = std::max({gscale, std::abs(pb.g1(t)), std::abs(pb.g2(t))});
        }
    if (worst > 1e-6 * std::max(1.0, gscale)) {
        throw DomainError("invariant fields agree but the fitted moebius relation fails globally");
    }
    return std::make_pair(*m1, *m2);
}

}  // namespace maxsurf
