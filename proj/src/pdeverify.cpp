#include "maxsurf/pdeverify.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"

namespace maxsurf {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

Mask stencil_interior(const GridSpec& g, const Mask& mask) {
    Mask out(g.size(), 0);
    for (int iv = 1; iv + 1 < g.nv; ++iv)
        for (int iu = 1; iu + 1 < g.nu; ++iu) {
            if (mask[g.index(iu, iv)] && mask[g.index(iu - 1, iv)] && mask[g.index(iu + 1, iv)] &&
                mask[g.index(iu, iv - 1)] && mask[g.index(iu, iv + 1)])
                out[g.index(iu, iv)] = 1;
        }
    return out;
}

ResidualReport summarize(const std::string& id, const Field<double>& res) {
    ResidualReport r;
    r.equation_id = id;
    r.h = res.grid.h;
    double sum2 = 0.0;
    for (int i = 0; i < res.grid.size(); ++i) {
        if (std::isnan(res[i])) continue;
        double v = std::abs(res[i]);
        r.max_abs = std::max(r.max_abs, v);
        sum2 += v * v;
        ++r.points;
    }
    r.rms = r.points ? std::sqrt(sum2 / r.points) : 0.0;
    return r;
}

// statistics mask: valid, not flagged near-degenerate, full stencil valid
Mask stats_mask(const InvariantField& inv) {
    Mask m = stencil_interior(inv.grid, inv.mask);
    for (int i = 0; i < inv.grid.size(); ++i)
        if (inv.near_degenerate[i]) m[i] = 0;
    return m;
}

void hand_back(std::vector<Field<double>>* sink, std::vector<Field<double>>&& fields) {
    if (sink) *sink = std::move(fields);
}

}  // namespace

Field<double> laplacian_fd(const Field<double>& f, const Mask& mask, Mask* out_mask) {
    const GridSpec& g = f.grid;
    Field<double> lap(g, kNaN);
    Mask m = stencil_interior(g, mask);
    double h2 = g.h * g.h;
    for (int iv = 1; iv + 1 < g.nv; ++iv)
        for (int iu = 1; iu + 1 < g.nu; ++iu) {
            if (!m[g.index(iu, iv)]) continue;
            lap.at(iu, iv) = (f.at(iu + 1, iv) + f.at(iu - 1, iv) + f.at(iu, iv + 1) +
                              f.at(iu, iv - 1) - 4.0 * f.at(iu, iv)) /
                             h2;
        }
    if (out_mask) *out_mask = m;
    return lap;
}

std::vector<ResidualReport> residual_natural_K_kappa(const InvariantField& inv,
                                                     std::vector<Field<double>>* fields) {
    const GridSpec& g = inv.grid;
    Field<double> lnq(g), lnratio(g), lnplus(g), lnminus(g);
    Mask fmask(g.size(), 0);
    for (int i = 0; i < g.size(); ++i) {
        if (!inv.mask[i]) continue;
        double K = inv.K[i], kap = inv.kappa[i];
        if (!(K > std::abs(kap))) continue;
        lnq[i] = 0.25 * std::log((K - kap) * (K + kap));
        lnratio[i] = 0.5 * std::log((K + kap) / (K - kap));
        lnplus[i] = std::log(K + kap);
        lnminus[i] = std::log(K - kap);
        fmask[i] = 1;
    }
    Mask lmask;
    Field<double> lap_lnq = laplacian_fd(lnq, fmask, &lmask);
    Field<double> lap_ratio = laplacian_fd(lnratio, fmask, nullptr);
    Field<double> lap_plus = laplacian_fd(lnplus, fmask, nullptr);
    Field<double> lap_minus = laplacian_fd(lnminus, fmask, nullptr);

    Mask eval = stats_mask(inv);
    for (int i = 0; i < g.size(); ++i) eval[i] = eval[i] && lmask[i];

    Field<double> r1(g, kNaN), r2(g, kNaN), s_plus(g, kNaN), s_minus(g, kNaN);
    for (int i = 0; i < g.size(); ++i) {
        if (!eval[i]) continue;
        double K = inv.K[i], kap = inv.kappa[i], E = inv.E[i];
        double q = std::exp(lnq[i]);
        r1[i] = q * lap_lnq[i] - 2.0 * K;
        r2[i] = q * lap_ratio[i] - 2.0 * kap;
        s_plus[i] = lap_plus[i] / E - 2.0 * (2.0 * K + kap);
        s_minus[i] = lap_minus[i] / E - 2.0 * (2.0 * K - kap);
    }
    std::vector<ResidualReport> reports = {
        summarize("natural_K_kappa_1", r1), summarize("natural_K_kappa_2", r2),
        summarize("split_form_plus", s_plus), summarize("split_form_minus", s_minus)};
    hand_back(fields, {std::move(r1), std::move(r2), std::move(s_plus), std::move(s_minus)});
    return reports;
}

std::vector<ResidualReport> residual_natural_nu_mu(const InvariantField& inv,
                                                   std::vector<Field<double>>* fields) {
    const GridSpec& g = inv.grid;
    Field<double> lns(g), lnratio(g);
    Mask fmask(g.size(), 0);
    for (int i = 0; i < g.size(); ++i) {
        if (!inv.mask[i]) continue;
        double nu = inv.nu[i], mu = inv.mu[i];
        if (!(nu > std::abs(mu))) continue;
        lns[i] = 0.5 * std::log((nu - mu) * (nu + mu));
        lnratio[i] = std::log((nu + mu) / (nu - mu));
        fmask[i] = 1;
    }
    Mask lmask;
    Field<double> lap_lns = laplacian_fd(lns, fmask, &lmask);
    Field<double> lap_ratio = laplacian_fd(lnratio, fmask, nullptr);

    Mask eval = stats_mask(inv);
    for (int i = 0; i < g.size(); ++i) eval[i] = eval[i] && lmask[i];

    Field<double> r1(g, kNaN), r2(g, kNaN);
    for (int i = 0; i < g.size(); ++i) {
        if (!eval[i]) continue;
        double nu = inv.nu[i], mu = inv.mu[i];
        double S = std::exp(lns[i]);
        r1[i] = S * lap_lns[i] - 2.0 * nu * nu - 2.0 * mu * mu;
        r2[i] = S * lap_ratio[i] - 4.0 * nu * mu;
    }
    std::vector<ResidualReport> reports = {summarize("natural_nu_mu_1", r1),
                                           summarize("natural_nu_mu_2", r2)};
    hand_back(fields, {std::move(r1), std::move(r2)});
    return reports;
}

ResidualReport residual_gauss(const InvariantField& inv, Field<double>* field) {
    const GridSpec& g = inv.grid;
    Field<double> lnE(g);
    Mask fmask(g.size(), 0);
    for (int i = 0; i < g.size(); ++i) {
        if (!inv.mask[i] || !(inv.E[i] > 0.0)) continue;
        lnE[i] = std::log(inv.E[i]);
        fmask[i] = 1;
    }
    Mask lmask;
    Field<double> lap = laplacian_fd(lnE, fmask, &lmask);
    Mask eval = stats_mask(inv);
    Field<double> r(g, kNaN);
    for (int i = 0; i < g.size(); ++i)
        if (eval[i] && lmask[i]) r[i] = lap[i] / inv.E[i] + 2.0 * inv.K[i];
    ResidualReport rep = summarize("gauss", r);
    if (field) *field = std::move(r);
    return rep;
}

ResidualReport residual_ricci(const InvariantField& inv, Field<double>* field) {
    const GridSpec& g = inv.grid;
    Mask bmask;
    Field<Complex> beta = beta_field(inv, &bmask);
    Mask eval = stencil_interior(g, bmask);
    Mask stats = stats_mask(inv);
    Field<double> r(g, kNaN);
    for (int iv = 2; iv + 2 < g.nv; ++iv)
        for (int iu = 2; iu + 2 < g.nu; ++iu) {
            int i = g.index(iu, iv);
            if (!eval[i] || !stats[i]) continue;
            Complex du = (beta.at(iu + 1, iv) - beta.at(iu - 1, iv)) / (2.0 * g.h);
            Complex dv = (beta.at(iu, iv + 1) - beta.at(iu, iv - 1)) / (2.0 * g.h);
            Complex dbar = 0.5 * (du + Complex(0.0, 1.0) * dv);
            r[i] = dbar.imag() + 0.5 * inv.E[i] * inv.nu[i] * inv.mu[i];
        }
    ResidualReport rep = summarize("ricci", r);
    if (field) *field = std::move(r);
    return rep;
}

ResidualReport residual_r31(const Field<double>& nu, const Mask& mask, Field<double>* field) {
    const GridSpec& g = nu.grid;
    Field<double> lnnu(g);
    Mask fmask(g.size(), 0);
    for (int i = 0; i < g.size(); ++i) {
        if (!mask[i] || !(nu[i] > 0.0)) continue;
        lnnu[i] = std::log(nu[i]);
        fmask[i] = 1;
    }
    Mask lmask;
    Field<double> lap = laplacian_fd(lnnu, fmask, &lmask);
    Field<double> r(g, kNaN);
    for (int i = 0; i < g.size(); ++i)
        if (lmask[i]) r[i] = lap[i] - 2.0 * nu[i];
    ResidualReport rep = summarize("natural_r31", r);
    if (field) *field = std::move(r);
    return rep;
}

namespace {

QuadC fd_dt(const Field<QuadC>& f, const GridSpec& g, int iu, int iv) {
    QuadC du = (f.at(iu + 1, iv) - f.at(iu - 1, iv)) / (2.0 * g.h);
    QuadC dv = (f.at(iu, iv + 1) - f.at(iu, iv - 1)) / (2.0 * g.h);
    return 0.5 * (du - Complex(0.0, 1.0) * dv);
}

QuadC fd_dtbar(const Field<QuadC>& f, const GridSpec& g, int iu, int iv) {
    QuadC du = (f.at(iu + 1, iv) - f.at(iu - 1, iv)) / (2.0 * g.h);
    QuadC dv = (f.at(iu, iv + 1) - f.at(iu, iv - 1)) / (2.0 * g.h);
    return 0.5 * (du + Complex(0.0, 1.0) * dv);
}

// signature-aware completion of (X1, X2, n1) to a unit normal
QuadC oriented_completion(const QuadC& X1, const QuadC& X2, const QuadC& n1) {
    QuadC best{};
    double best_mag = -1.0;
    for (int k = 0; k < 4; ++k) {
        QuadC e{};
        e[k] = 1.0;
        QuadC w = e;
        w = w - (bilinear(w, X1) / bilinear(X1, X1)) * X1;
        w = w - (bilinear(w, X2) / bilinear(X2, X2)) * X2;
        w = w - (bilinear(w, n1) / bilinear(n1, n1)) * n1;
        double m = std::abs(bilinear(w, w).real());
        if (m > best_mag) {
            best_mag = m;
            best = w;
        }
    }
    double w2 = bilinear(best, best).real();
    QuadC n2 = best / std::sqrt(std::abs(w2));
    if (det4(X1, X2, n1, n2).real() < 0.0) n2 = -n2;
    return n2;
}

}  // namespace

FrenetReport frenet_residual(const HolPair& p, const GridSpec& grid) {
    InvariantField inv = invariant_field(p, grid);
    PhiGrid pg = phi_grid(p, grid);

    // stay clear of degenerate points
    std::vector<Complex> zeros = degenerate_points(p, grid);
    Mask base = inv.mask;
    for (int i = 0; i < grid.size(); ++i) base[i] = base[i] && pg.mask[i];
    if (!zeros.empty()) {
        for (int iv = 0; iv < grid.nv; ++iv)
            for (int iu = 0; iu < grid.nu; ++iu)
                for (const Complex& z : zeros)
                    if (std::abs(grid.point(iu, iv) - z) < 3.0 * grid.h) base[grid.index(iu, iv)] = 0;
    }

    FrenetReport rep;

    // frame fields
    Field<QuadC> n1f(grid), n2f(grid);
    Field<double> lnE(grid);
    Mask frame_mask(grid.size(), 0);
    const double mu_floor = 1e-7;
    for (int iv = 0; iv < grid.nv; ++iv)
        for (int iu = 0; iu < grid.nu; ++iu) {
            int i = grid.index(iu, iv);
            if (!base[i]) continue;
            const QuadC& phi = pg.phi[i];
            const QuadC& dphi = pg.dphi[i];
            double E = inv.E[i];
            SecondFundamental sf = second_fundamental(phi, dphi);
            QuadC n1 = (-1.0 / (E * inv.nu[i])) * sf.sigma_uu;
            QuadC n2;
            if (std::abs(inv.mu[i]) < mu_floor * inv.nu[i]) {
                rep.mu_zero_branch = true;
                QuadC X1 = real_part(phi) / std::sqrt(E);
                QuadC X2 = -imag_part(phi) / std::sqrt(E);
                n2 = oriented_completion(X1, X2, n1);
            } else {
                n2 = (-1.0 / (E * inv.mu[i])) * sf.sigma_uv;
            }
            n1f[i] = n1;
            n2f[i] = n2;
            lnE[i] = std::log(E);
            frame_mask[i] = 1;
        }

    // global orientation: flip (mu, n2, beta) together when the frame is left handed
    double flip = 1.0;
    for (int i = 0; i < grid.size(); ++i) {
        if (!frame_mask[i]) continue;
        if (std::abs(inv.mu[i]) < mu_floor * inv.nu[i]) continue;
        const QuadC& phi = pg.phi[i];
        double E = inv.E[i];
        QuadC X1 = real_part(phi) / std::sqrt(E);
        QuadC X2 = -imag_part(phi) / std::sqrt(E);
        flip = det4(X1, X2, n1f[i], n2f[i]).real() < 0.0 ? -1.0 : 1.0;
        break;
    }
    if (flip < 0.0) {
        for (int i = 0; i < grid.size(); ++i)
            if (frame_mask[i]) n2f[i] = -n2f[i];
    }

    Mask bmask;
    Field<Complex> beta = beta_field(inv, &bmask);

    Mask eval = stencil_interior(grid, frame_mask);
    for (int i = 0; i < grid.size(); ++i) eval[i] = eval[i] && bmask[i];

    Field<double> r_dtbar(grid, kNaN), r_dphi(grid, kNaN), r_dn1(grid, kNaN), r_dn2(grid, kNaN);
    for (int iv = 1; iv + 1 < grid.nv; ++iv)
        for (int iu = 1; iu + 1 < grid.nu; ++iu) {
            int i = grid.index(iu, iv);
            if (!eval[i]) continue;
            const QuadC& phi = pg.phi[i];
            double E = inv.E[i];
            double nu = inv.nu[i];
            double mu = flip * inv.mu[i];
            Complex b = flip * beta[i];

            QuadC dtbar = fd_dtbar(pg.phi, grid, iu, iv);
            r_dtbar[i] = dtbar.max_abs();

            double du = (lnE.at(iu + 1, iv) - lnE.at(iu - 1, iv)) / (2.0 * grid.h);
            double dv = (lnE.at(iu, iv + 1) - lnE.at(iu, iv - 1)) / (2.0 * grid.h);
            Complex dlnE_dt = 0.5 * Complex(du, -dv);
            QuadC rhs2 = dlnE_dt * phi - (E * nu) * n1f[i] + Complex(0.0, E * mu) * n2f[i];
            r_dphi[i] = (fd_dt(pg.phi, grid, iu, iv) - rhs2).max_abs();

            QuadC rhs3 = (-0.5 * nu) * conj(phi) + b * n2f[i];
            r_dn1[i] = (fd_dt(n1f, grid, iu, iv) - rhs3).max_abs();

            QuadC rhs4 = Complex(0.0, 0.5 * mu) * conj(phi) - b * n1f[i];
            r_dn2[i] = (fd_dt(n2f, grid, iu, iv) - rhs4).max_abs();
        }
    rep.equations = {summarize("frenet_dphi_dtbar", r_dtbar), summarize("frenet_dphi_dt", r_dphi),
                     summarize("frenet_dn1_dt", r_dn1), summarize("frenet_dn2_dt", r_dn2)};
    rep.fields = {std::move(r_dtbar), std::move(r_dphi), std::move(r_dn1), std::move(r_dn2)};
    return rep;
}

std::vector<ResidualReport> geodesic_curvature_check(const InvariantField& inv,
                                                     std::vector<Field<double>>* fields) {
    const GridSpec& g = inv.grid;
    Mask eval = stencil_interior(g, inv.mask);
    Field<double> g1(g, kNaN), g2(g, kNaN);
    for (int iv = 1; iv + 1 < g.nv; ++iv)
        for (int iu = 1; iu + 1 < g.nu; ++iu) {
            int i = g.index(iu, iv);
            if (!eval[i]) continue;
            double E = inv.E[i];
            double Eu = (inv.E.at(iu + 1, iv) - inv.E.at(iu - 1, iv)) / (2.0 * g.h);
            double Ev = (inv.E.at(iu, iv + 1) - inv.E.at(iu, iv - 1)) / (2.0 * g.h);
            double den = 2.0 * E * std::sqrt(E);
            double a = -Ev / den, b = Eu / den;
            if (std::isfinite(a) && std::isfinite(b)) {
                g1[i] = a;
                g2[i] = b;
            }
        }
    std::vector<ResidualReport> reports = {summarize("geodesic_gamma1", g1),
                                           summarize("geodesic_gamma2", g2)};
    hand_back(fields, {std::move(g1), std::move(g2)});
    return reports;
}

double shared_interior_ratio(const Field<double>& coarse, const Field<double>& fine) {
    const GridSpec& gc = coarse.grid;
    const GridSpec& gf = fine.grid;
    if (gf.nu != 2 * gc.nu - 1 || gf.nv != 2 * gc.nv - 1) {
        throw DomainError("fine grid must be the nested refinement of the coarse one");
    }
    double cmax = 0.0, fmax = 0.0;
    for (int iv = 0; iv < gc.nv; ++iv)
        for (int iu = 0; iu < gc.nu; ++iu) {
            double c = coarse.at(iu, iv);
            double f = fine.at(2 * iu, 2 * iv);
            if (std::isnan(c) || std::isnan(f)) continue;
            cmax = std::max(cmax, std::abs(c));
            fmax = std::max(fmax, std::abs(f));
        }
    if (!(fmax > 0.0)) return 0.0;
    return cmax / fmax;
}

double order_estimate(double coarse_max, double fine_max) {
    if (!(coarse_max > 0.0) || !(fine_max > 0.0)) return 0.0;
    return std::log2(coarse_max / fine_max);
}

std::string residual_reports_json(const std::vector<ResidualReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ResidualReport& r : reports) {
        nlohmann::ordered_json j;
        j["equation_id"] = r.equation_id;
        j["h"] = r.h;
        j["max_abs"] = r.max_abs;
        j["rms"] = r.rms;
        j["points"] = r.points;
        if (r.order_estimate) j["order_estimate"] = *r.order_estimate;
        arr.push_back(j);
    }
    return arr.dump(2);
}

}  // namespace maxsurf
