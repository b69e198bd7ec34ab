#include "maxsurf/invariants.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace maxsurf {

InvariantSample canonical_invariants(const GenValues& gv, Complex t, double near_degen_rel) {
    double m1 = std::norm(gv.g1) - 1.0;
    double m2 = std::norm(gv.g2) - 1.0;
    double P = m1 * m2;
    if (!(P > 0.0)) {
        throw DomainError("validity violated: (|g1|^2-1)(|g2|^2-1) must be positive");
    }
    double W = std::abs(gv.dg1 * gv.dg2);
    if (W == 0.0) throw DomainError("degenerate point: g1'·g2' = 0");

    double A1 = std::abs(gv.dg1) / std::abs(m1);
    double A2 = std::abs(gv.dg2) / std::abs(m2);
    double q = W / P;

    InvariantSample s;
    s.t = t;
    s.E = P / (4.0 * W);
    s.K = 8.0 * q * (A1 * A1 + A2 * A2);
    s.kappa = -8.0 * q * (A1 * A1 - A2 * A2);
    s.nu = 2.0 * std::sqrt(q) * (A1 + A2);
    s.mu = -2.0 * std::sqrt(q) * (A1 - A2);
    s.near_degenerate = (s.nu - std::abs(s.mu)) < near_degen_rel * s.nu;
    return s;
}

InvariantSample canonical_invariants(const HolPair& p, Complex t) {
    GenValues gv{p.g1(t), p.g1.derivative()(t), p.g2(t), p.g2.derivative()(t)};
    return canonical_invariants(gv, t);
}

GeneralInvariants general_invariants(const HolTriple& tr, Complex t) {
    Complex f = tr.f(t), g1 = tr.g1(t), g2 = tr.g2(t);
    Complex dg1 = tr.g1.derivative()(t), dg2 = tr.g2.derivative()(t);
    double m1 = std::norm(g1) - 1.0;
    double m2 = std::norm(g2) - 1.0;
    double F = std::norm(f);
    if (!(F * m1 * m2 > 0.0)) {
        throw DomainError("validity violated: |f|^2 (|g1|^2-1)(|g2|^2-1) must be positive");
    }
    double B1 = std::norm(dg1) / (m1 * m1);
    double B2 = std::norm(dg2) / (m2 * m2);
    GeneralInvariants r;
    r.E = F * m1 * m2;
    r.K = 2.0 / r.E * (B1 + B2);
    r.kappa = -2.0 / r.E * (B1 - B2);
    return r;
}

InvariantSample canonicalized_invariants(const HolTriple& tr, Complex t) {
    Complex sp = canonical_parameter_derivative(tr, t);
    if (sp == 0.0) throw DomainError("degenerate point: the parameter change is singular");
    GenValues gv{tr.g1(t), tr.g1.derivative()(t) / sp, tr.g2(t), tr.g2.derivative()(t) / sp};
    return canonical_invariants(gv, t);
}

std::pair<double, double> curvatures_from_normal(double nu, double mu) {
    if (!(nu > std::abs(mu))) throw DomainError("requires nu > |mu| >= 0");
    return {nu * nu + mu * mu, 2.0 * nu * mu};
}

std::pair<double, double> normal_from_curvatures(double K, double kappa) {
    if (!(K > std::abs(kappa))) throw DomainError("requires K > |kappa|");
    double sp = std::sqrt(K + kappa);
    double sm = std::sqrt(K - kappa);
    return {0.5 * (sp + sm), 0.5 * (sp - sm)};
}

double E_from_curvatures(double K, double kappa) {
    if (!(K > std::abs(kappa))) throw DomainError("requires K > |kappa|");
    return 1.0 / std::sqrt(std::sqrt((K - kappa) * (K + kappa)));
}

std::pair<double, double> ellipse_axes(const HolPair& p, Complex t) {
    InvariantSample s = canonical_invariants(p, t);
    return {s.nu, std::abs(s.mu)};
}

R31Invariants r31_invariants(const HolExpr& g, Complex t) {
    Complex gv = g(t);
    Complex dg = g.derivative()(t);
    double m = std::norm(gv) - 1.0;
    if (dg == 0.0 || m == 0.0) throw DomainError("requires g' != 0 and |g| != 1");
    R31Invariants r;
    r.nu = 4.0 * std::norm(dg) / (m * m);
    r.E = 1.0 / r.nu;
    return r;
}

std::pair<double, double> correspond_to_r42(double nu1, double nu2) {
    if (!(nu1 > 0.0) || !(nu2 > 0.0)) throw DomainError("normal curvatures must be positive");
    double g = std::sqrt(nu1 * nu2);
    return {0.5 * g * (nu1 + nu2), -0.5 * g * (nu1 - nu2)};
}

std::pair<double, double> correspond_from_r42(double K, double kappa) {
    if (!(K > std::abs(kappa))) throw DomainError("requires K > |kappa|");
    double q = std::sqrt(std::sqrt((K - kappa) * (K + kappa)));
    return {(K - kappa) / q, (K + kappa) / q};
}

double geometric_mean_E(double E1, double E2) {
    if (!(E1 > 0.0) || !(E2 > 0.0)) throw DomainError("coefficients must be positive");
    return std::sqrt(E1 * E2);
}

InvariantField invariant_field(const HolPair& p, const GridSpec& grid, double degen_tol_rel) {
    ValidityReport rep = validity_report(p, grid, degen_tol_rel);
    InvariantField f;
    f.grid = grid;
    f.E = Field<double>(grid);
    f.K = Field<double>(grid);
    f.kappa = Field<double>(grid);
    f.nu = Field<double>(grid);
    f.mu = Field<double>(grid);
    f.mask.assign(grid.size(), 0);
    f.near_degenerate.assign(grid.size(), 0);

    HolExpr dg1 = p.g1.derivative(), dg2 = p.g2.derivative();
    const double qnan = std::numeric_limits<double>::quiet_NaN();
    for (int iv = 0; iv < grid.nv; ++iv)
        for (int iu = 0; iu < grid.nu; ++iu) {
            int i = grid.index(iu, iv);
            if (rep.points[i] != PointClass::Valid) {
                f.E[i] = f.K[i] = f.kappa[i] = f.nu[i] = f.mu[i] = qnan;
                continue;
            }
            Complex t = grid.point(iu, iv);
            GenValues gv{p.g1(t), dg1(t), p.g2(t), dg2(t)};
            InvariantSample s = canonical_invariants(gv, t, degen_tol_rel);
            f.E[i] = s.E;
            f.K[i] = s.K;
            f.kappa[i] = s.kappa;
            f.nu[i] = s.nu;
            f.mu[i] = s.mu;
            f.mask[i] = 1;
            f.near_degenerate[i] = s.near_degenerate ? 1 : 0;
        }
    return f;
}

Field<Complex> beta_field(const InvariantField& inv, Mask* out_mask) {
    const GridSpec& g = inv.grid;
    Field<double> L(g);
    Mask lmask(g.size(), 0);
    for (int i = 0; i < g.size(); ++i) {
        if (!inv.mask[i]) continue;
        double num = inv.nu[i] + inv.mu[i];
        double den = inv.nu[i] - inv.mu[i];
        if (!(num > 0.0) || !(den > 0.0)) continue;
        L[i] = std::log(num / den);
        lmask[i] = 1;
    }
    Field<Complex> beta(g);
    Mask bmask(g.size(), 0);
    const Complex i_half(0.0, 0.5);
    for (int iv = 1; iv + 1 < g.nv; ++iv)
        for (int iu = 1; iu + 1 < g.nu; ++iu) {
            if (!lmask[g.index(iu, iv)] || !lmask[g.index(iu - 1, iv)] ||
                !lmask[g.index(iu + 1, iv)] || !lmask[g.index(iu, iv - 1)] ||
                !lmask[g.index(iu, iv + 1)])
                continue;
            double du = (L.at(iu + 1, iv) - L.at(iu - 1, iv)) / (2.0 * g.h);
            double dv = (L.at(iu, iv + 1) - L.at(iu, iv - 1)) / (2.0 * g.h);
            Complex ddt = 0.5 * Complex(du, -dv);
            beta.at(iu, iv) = -i_half * ddt;
            bmask[g.index(iu, iv)] = 1;
        }
    if (out_mask) *out_mask = bmask;
    return beta;
}

namespace {

void append_g17(std::string& out, double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    out += buf;
}

}  // namespace

std::string invariant_field_csv(const InvariantField& inv) {
    std::string out = "u,v,E,K,kappa,nu,mu,valid\n";
    const GridSpec& g = inv.grid;
    for (int iv = 0; iv < g.nv; ++iv)
        for (int iu = 0; iu < g.nu; ++iu) {
            int i = g.index(iu, iv);
            append_g17(out, g.u(iu));
            out += ',';
            append_g17(out, g.v(iv));
            out += ',';
            append_g17(out, inv.E[i]);
            out += ',';
            append_g17(out, inv.K[i]);
            out += ',';
            append_g17(out, inv.kappa[i]);
            out += ',';
            append_g17(out, inv.nu[i]);
            out += ',';
            append_g17(out, inv.mu[i]);
            out += ',';
            out += inv.mask[i] ? '1' : '0';
            out += '\n';
        }
    return out;
}

}  // namespace maxsurf
