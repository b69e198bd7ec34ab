#include "maxsurf/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quadrature.hpp"

namespace maxsurf {

namespace {

const Complex kI(0.0, 1.0);

std::array<HolExpr, 4> general_components(const HolExpr& f, const HolExpr& g1, const HolExpr& g2) {
    HolExpr one = HolExpr::constant(1.0);
    HolExpr i = HolExpr::constant(kI);
    return {f * (g1 * g2 + one), i * (f * (g1 * g2 - one)), f * (g1 + g2), i * (f * (g1 - g2))};
}

}  // namespace

CanonicalPhi::CanonicalPhi(const HolPair& p) : branch_sign_(p.branch_sign) {
    HolExpr w = p.g1.derivative() * p.g2.derivative();
    if (p.type == CanonicalType::Second) w = -w;
    w_ = w;
    HolExpr f = HolExpr::constant(1.0) / (HolExpr::constant(2.0) * sqrt(w));
    comp_ = general_components(f, p.g1, p.g2);
    for (int k = 0; k < 4; ++k) dcomp_[k] = comp_[k].derivative();
}

QuadC CanonicalPhi::phi(Complex t) const {
    QuadC r;
    for (int k = 0; k < 4; ++k) r[k] = comp_[k](t);
    return double(branch_sign_) * r;
}

QuadC CanonicalPhi::dphi(Complex t) const {
    QuadC r;
    for (int k = 0; k < 4; ++k) r[k] = dcomp_[k](t);
    return double(branch_sign_) * r;
}

GeneralPhi::GeneralPhi(const HolTriple& tr) {
    comp_ = general_components(tr.f, tr.g1, tr.g2);
    for (int k = 0; k < 4; ++k) dcomp_[k] = comp_[k].derivative();
}

QuadC GeneralPhi::phi(Complex t) const {
    QuadC r;
    for (int k = 0; k < 4; ++k) r[k] = comp_[k](t);
    return r;
}

QuadC GeneralPhi::dphi(Complex t) const {
    QuadC r;
    for (int k = 0; k < 4; ++k) r[k] = dcomp_[k](t);
    return r;
}

QuadC phi_general(const HolTriple& tr, Complex t) {
    Complex f = tr.f(t), g1 = tr.g1(t), g2 = tr.g2(t);
    return {{f * (g1 * g2 + 1.0), kI * f * (g1 * g2 - 1.0), f * (g1 + g2), kI * f * (g1 - g2)}};
}

QuadC phi_canonical(const HolPair& p, Complex t) {
    Complex g1 = p.g1(t), g2 = p.g2(t);
    Complex w = p.g1.derivative()(t) * p.g2.derivative()(t);
    if (p.type == CanonicalType::Second) w = -w;
    if (w == 0.0) throw DomainError("degenerate point: g1'·g2' = 0");
    Complex f = double(p.branch_sign) / (2.0 * std::sqrt(w));
    return {{f * (g1 * g2 + 1.0), kI * f * (g1 * g2 - 1.0), f * (g1 + g2), kI * f * (g1 - g2)}};
}

RecoveredGenerators recover_generators(const QuadC& phi, double tol) {
    Complex den = phi[0] + kI * phi[1];
    if (std::abs(den) <= tol * std::max(1.0, phi.max_abs())) {
        throw DomainError(
            "phi1 + i*phi2 = 0: generators are not recoverable here; "
            "apply a proper motion first");
    }
    return {den / 2.0, (phi[2] - kI * phi[3]) / den, (phi[2] + kI * phi[3]) / den};
}

namespace {

struct PointProbe {
    bool singular = false;
    Complex g1{}, g2{}, aux{};  // aux: g1'·g2' for pairs, f for triples
    Complex w{};                // degeneracy indicator
    double metric = 0.0;        // (|g1|^2-1)(|g2|^2-1), times |f|^2 for triples
};

template <class ProbeFn>
ValidityReport classify_grid(const GridSpec& grid, double degen_tol_rel, ProbeFn&& probe) {
    ValidityReport rep;
    rep.grid = grid;
    rep.points.assign(grid.size(), PointClass::Valid);

    std::vector<PointProbe> probes(grid.size());
    std::vector<double> mags;
    mags.reserve(grid.size());
    for (int iv = 0; iv < grid.nv; ++iv)
        for (int iu = 0; iu < grid.nu; ++iu) {
            PointProbe& pr = probes[grid.index(iu, iv)];
            pr = probe(grid.point(iu, iv));
            if (!pr.singular) mags.push_back(std::abs(pr.w));
        }
    double scale = 1.0;
    if (!mags.empty()) {
        auto mid = mags.begin() + mags.size() / 2;
        std::nth_element(mags.begin(), mid, mags.end());
        scale = *mid;
    }
    double threshold = degen_tol_rel * scale;

    for (int i = 0; i < grid.size(); ++i) {
        const PointProbe& pr = probes[i];
        PointClass cls = PointClass::Valid;
        if (pr.singular) {
            cls = PointClass::SingularEvaluation;
        } else if (!(pr.metric > 0.0)) {
            cls = PointClass::MetricDegenerate;
        } else if (std::abs(pr.w) <= threshold) {
            cls = PointClass::DegeneratePoint;
        }
        rep.points[i] = cls;
        switch (cls) {
            case PointClass::Valid: ++rep.n_valid; break;
            case PointClass::MetricDegenerate: ++rep.n_metric_degenerate; break;
            case PointClass::DegeneratePoint: ++rep.n_degenerate; break;
            case PointClass::SingularEvaluation: ++rep.n_singular; break;
        }
    }
    return rep;
}

}  // namespace

Mask ValidityReport::valid_mask() const {
    Mask m(points.size(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) m[i] = points[i] == PointClass::Valid ? 1 : 0;
    return m;
}

ValidityReport validity_report(const HolPair& p, const GridSpec& grid, double degen_tol_rel) {
    HolExpr dg1 = p.g1.derivative(), dg2 = p.g2.derivative();
    return classify_grid(grid, degen_tol_rel, [&](Complex t) {
        PointProbe pr;
        try {
            pr.g1 = p.g1(t);
            pr.g2 = p.g2(t);
            pr.w = dg1(t) * dg2(t);
            pr.metric = (std::norm(pr.g1) - 1.0) * (std::norm(pr.g2) - 1.0);
        } catch (const EvalError&) {
            pr.singular = true;
        }
        return pr;
    });
}

ValidityReport validity_report(const HolTriple& tr, const GridSpec& grid, double degen_tol_rel) {
    HolExpr dg1 = tr.g1.derivative(), dg2 = tr.g2.derivative();
    return classify_grid(grid, degen_tol_rel, [&](Complex t) {
        PointProbe pr;
        try {
            Complex f = tr.f(t);
            pr.g1 = tr.g1(t);
            pr.g2 = tr.g2(t);
            pr.w = dg1(t) * dg2(t);
            pr.metric = std::norm(f) * (std::norm(pr.g1) - 1.0) * (std::norm(pr.g2) - 1.0);
        } catch (const EvalError&) {
            pr.singular = true;
        }
        return pr;
    });
}

namespace {

// |w| minimisation along the two diagonals of a cell, alternated until the
// bracket shrinks below the position tolerance
Complex diagonal_bisection(const HolExpr& w, Complex center, double radius, double pos_tol) {
    const Complex dirs[2] = {Complex(M_SQRT1_2, M_SQRT1_2), Complex(M_SQRT1_2, -M_SQRT1_2)};
    Complex z = center;
    double r = radius;
    auto mag = [&](Complex p) {
        try {
            return std::abs(w(p));
        } catch (const EvalError&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    while (r > pos_tol) {
        for (const Complex& d : dirs) {
            double lo = -r, hi = r;
            while (hi - lo > 0.25 * pos_tol) {
                double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                if (mag(z + m1 * d) <= mag(z + m2 * d)) hi = m2;
                else lo = m1;
            }
            z += 0.5 * (lo + hi) * d;
        }
        r *= 0.5;
    }
    return z;
}

}  // namespace

std::vector<Complex> degenerate_points(const HolPair& p, const GridSpec& grid, double tol_rel) {
    HolExpr w = p.g1.derivative() * p.g2.derivative();
    HolExpr dw = w.derivative();

    std::vector<double> mag(grid.size(), std::numeric_limits<double>::infinity());
    std::vector<double> finite;
    for (int iv = 0; iv < grid.nv; ++iv)
        for (int iu = 0; iu < grid.nu; ++iu) {
            try {
                mag[grid.index(iu, iv)] = std::abs(w(grid.point(iu, iv)));
                finite.push_back(mag[grid.index(iu, iv)]);
            } catch (const EvalError&) {
            }
        }
    if (finite.empty()) return {};
    auto mid = finite.begin() + finite.size() / 2;
    std::nth_element(finite.begin(), mid, finite.end());
    double scale = *mid;
    if (scale == 0.0) throw DomainError("g1'·g2' vanishes on more than half of the grid");

    const double h = grid.h;
    const double pos_tol = 1e-10;
    std::vector<Complex> zeros;

    auto keep = [&](Complex z) {
        if (z.real() < grid.u0 - h || z.real() > grid.u1 + h || z.imag() < grid.v0 - h ||
            z.imag() > grid.v1 + h)
            return;
        double wz;
        try {
            wz = std::abs(w(z));
        } catch (const EvalError&) {
            return;
        }
        if (wz > tol_rel * scale) return;
        for (const Complex& seen : zeros)
            if (std::abs(seen - z) < 0.5 * h) return;
        zeros.push_back(z);
    };

    for (int iv = 0; iv + 1 < grid.nv; ++iv)
        for (int iu = 0; iu + 1 < grid.nu; ++iu) {
            double m = std::min(std::min(mag[grid.index(iu, iv)], mag[grid.index(iu + 1, iv)]),
                                std::min(mag[grid.index(iu, iv + 1)], mag[grid.index(iu + 1, iv + 1)]));
            // a zero inside the cell pulls a corner below |w'|·h·sqrt2
            double slope = 0.0;
            Complex center = grid.point(iu, iv) + Complex(0.5 * h, 0.5 * h);
            try {
                slope = std::abs(dw(center));
            } catch (const EvalError&) {
            }
            if (m > std::max(tol_rel * scale, 1.5 * h * slope)) continue;

            // Newton from the cell centre, diagonal bisection as fallback
            Complex z = center;
            bool converged = false;
            for (int it = 0; it < 60; ++it) {
                Complex wv, dv;
                try {
                    wv = w(z);
                    dv = dw(z);
                } catch (const EvalError&) {
                    break;
                }
                if (std::abs(dv) < 1e-300) break;
                Complex step = wv / dv;
                z -= step;
                if (std::abs(z - center) > 2.0 * h) break;
                if (std::abs(step) < 0.1 * pos_tol) {
                    converged = true;
                    break;
                }
            }
            if (!converged) z = diagonal_bisection(w, center, h, pos_tol);
            keep(z);
        }
    std::sort(zeros.begin(), zeros.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return zeros;
}

Complex canonical_parameter_derivative(const HolTriple& tr, Complex t) {
    HolExpr q = HolExpr::constant(4.0) * tr.f * tr.f * tr.g1.derivative() * tr.g2.derivative();
    return std::pow(q(t), 0.25);
}

Complex canonical_parameter(const HolTriple& tr, Complex t0, Complex t, double abs_tol) {
    HolExpr q = HolExpr::constant(4.0) * tr.f * tr.f * tr.g1.derivative() * tr.g2.derivative();
    auto princ = [&](Complex z) {
        Complex qv = q(z);
        if (std::abs(qv) < 1e-280) throw DomainError("degenerate point on the integration path");
        return std::pow(qv, 0.25);
    };
    if (t == t0) return 0.0;
    int steps = std::max(8, int(std::ceil(std::abs(t - t0) / 0.25)));
    detail::RootTracker tracker(4, princ(t0));
    Complex s = 0.0;
    try {
        for (int k = 0; k < steps; ++k) {
            Complex a = t0 + (t - t0) * (double(k) / steps);
            Complex b = t0 + (t - t0) * (double(k + 1) / steps);
            s += detail::integrate_tracked<Complex>(princ, princ, tracker, a, b, abs_tol / steps);
        }
    } catch (const EvalError& e) {
        throw QuadratureError(std::string("singular integrand on the canonicalization path: ") + e.what());
    }
    return s;
}

std::array<Complex, 3> phi_r31(const HolExpr& g, Complex t) {
    Complex gv = g(t);
    Complex dg = g.derivative()(t);
    if (dg == 0.0) throw DomainError("g' = 0: degenerate point");
    return {0.5 * (gv * gv + 1.0) / dg, 0.5 * kI * (gv * gv - 1.0) / dg, gv / dg};
}

namespace {

// chained square-root sign along a walk; R_prev is the signed previous value
int chain_sign(Complex root_principal, Complex r_prev_signed) {
    return std::abs(root_principal - r_prev_signed) <= std::abs(root_principal + r_prev_signed) ? 1 : -1;
}

}  // namespace

PhiGrid phi_grid(const HolPair& p, const GridSpec& grid) {
    CanonicalPhi P(p);
    PhiGrid out;
    out.phi = Field<QuadC>(grid);
    out.dphi = Field<QuadC>(grid);
    out.mask.assign(grid.size(), 0);

    Field<Complex> root(grid);
    Field<int> sign(grid, 1);
    for (int iv = 0; iv < grid.nv; ++iv)
        for (int iu = 0; iu < grid.nu; ++iu) {
            Complex t = grid.point(iu, iv);
            try {
                Complex w = P.radicand(t);
                Complex r = std::sqrt(w);
                QuadC ph = P.phi(t);
                QuadC dph = P.dphi(t);
                out.phi.at(iu, iv) = ph;
                out.dphi.at(iu, iv) = dph;
                root.at(iu, iv) = r;
                out.mask[grid.index(iu, iv)] = 1;
            } catch (const EvalError&) {
            } catch (const DomainError&) {
            }
        }

    // sign continuation: along row 0, then up each column
    Complex r_prev;
    bool have_prev = false;
    for (int iu = 0; iu < grid.nu; ++iu) {
        if (!out.mask[grid.index(iu, 0)]) continue;
        Complex rp = root.at(iu, 0);
        int s = 1;
        if (have_prev) s = chain_sign(rp, r_prev);
        sign.at(iu, 0) = s;
        r_prev = double(s) * rp;
        have_prev = true;
    }
    for (int iu = 0; iu < grid.nu; ++iu) {
        have_prev = out.mask[grid.index(iu, 0)] != 0;
        r_prev = have_prev ? double(sign.at(iu, 0)) * root.at(iu, 0) : Complex();
        for (int iv = 1; iv < grid.nv; ++iv) {
            if (!out.mask[grid.index(iu, iv)]) continue;
            Complex rp = root.at(iu, iv);
            int s = have_prev ? chain_sign(rp, r_prev) : 1;
            sign.at(iu, iv) = s;
            r_prev = double(s) * rp;
            have_prev = true;
        }
    }
    for (int i = 0; i < grid.size(); ++i) {
        if (!out.mask[i] || sign[i] == 1) continue;
        out.phi[i] = -out.phi[i];
        out.dphi[i] = -out.dphi[i];
    }
    return out;
}

PhiGrid phi_grid(const HolTriple& tr, const GridSpec& grid) {
    GeneralPhi P(tr);
    PhiGrid out;
    out.phi = Field<QuadC>(grid);
    out.dphi = Field<QuadC>(grid);
    out.mask.assign(grid.size(), 0);
    for (int iv = 0; iv < grid.nv; ++iv)
        for (int iu = 0; iu < grid.nu; ++iu) {
            Complex t = grid.point(iu, iv);
            try {
                out.phi.at(iu, iv) = P.phi(t);
                out.dphi.at(iu, iv) = P.dphi(t);
                out.mask[grid.index(iu, iv)] = 1;
            } catch (const EvalError&) {
            }
        }
    return out;
}

}  // namespace maxsurf
