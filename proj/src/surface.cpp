#include "maxsurf/surface.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "json.hpp"
#include "quadrature.hpp"

namespace maxsurf {

namespace {

// pointwise principal-branch access plus the root the branch tracking follows
class PhiEval {
public:
    explicit PhiEval(const PhiSource& src) {
        if (const HolPair* p = std::get_if<HolPair>(&src)) {
            can_.emplace(*p);
        } else {
            gen_.emplace(std::get<HolTriple>(src));
        }
    }

    bool tracked() const { return can_.has_value(); }

    QuadC phi(Complex t) const { return can_ ? can_->phi(t) : gen_->phi(t); }

    Complex root(Complex t) const {
        if (!can_) return 1.0;
        return std::sqrt(can_->radicand(t));
    }

private:
    std::optional<CanonicalPhi> can_;
    std::optional<GeneralPhi> gen_;
};

struct PsiPhiGrid {
    Field<QuadC> psi;
    Field<QuadC> phi;
};

QuadC tracked_segment(const PhiEval& f, detail::RootTracker& tr, Complex a, Complex b,
                      double abstol) {
    if (a == b) return QuadC{};
    return detail::integrate_tracked<QuadC>([&](Complex t) { return f.root(t); },
                                            [&](Complex t) { return f.phi(t); }, tr, a, b, abstol);
}

// Psi along the other L-path order t0 -> (Re t0, Im t) -> t, fresh tracking
// state; used for the path-independence spot checks
QuadC psi_L_vertical_first(const PhiEval& f, Complex t0, Complex t, double abstol) {
    Complex corner(t0.real(), t.imag());
    detail::RootTracker tr(2, f.root(t0));
    QuadC s = tracked_segment(f, tr, t0, corner, abstol);
    return s + tracked_segment(f, tr, corner, t, abstol);
}

PsiPhiGrid build_psi_phi(const PhiSource& src, const GridSpec& grid, Complex t0, double abs_tol) {
    if (t0.real() < grid.u0 - 1e-12 || t0.real() > grid.u1 + 1e-12 || t0.imag() < grid.v0 - 1e-12 ||
        t0.imag() > grid.v1 + 1e-12) {
        throw DomainError("base point t0 must lie inside the grid rectangle");
    }
    PhiEval f(src);
    double seg_tol = abs_tol / 50.0;

    PsiPhiGrid out;
    out.psi = Field<QuadC>(grid);
    out.phi = Field<QuadC>(grid);

    const double y0 = t0.imag();

    // horizontal anchors H[iu] = ∫ t0 -> (u_iu, y0), carrying tracker state
    std::vector<QuadC> H(grid.nu);
    std::vector<detail::RootTracker> row_state(grid.nu);
    int iu_split = 0;
    while (iu_split < grid.nu && grid.u(iu_split) < t0.real()) ++iu_split;

    {
        detail::RootTracker tr(2, f.root(t0));
        QuadC acc{};
        Complex prev = t0;
        for (int iu = iu_split; iu < grid.nu; ++iu) {
            Complex pt(grid.u(iu), y0);
            acc = acc + tracked_segment(f, tr, prev, pt, seg_tol);
            H[iu] = acc;
            row_state[iu] = tr;
            prev = pt;
        }
    }
    {
        detail::RootTracker tr(2, f.root(t0));
        QuadC acc{};
        Complex prev = t0;
        for (int iu = iu_split - 1; iu >= 0; --iu) {
            Complex pt(grid.u(iu), y0);
            acc = acc + tracked_segment(f, tr, prev, pt, seg_tol);
            H[iu] = acc;
            row_state[iu] = tr;
            prev = pt;
        }
    }

    // vertical prefixes per column
    int iv_split = 0;
    while (iv_split < grid.nv && grid.v(iv_split) < y0) ++iv_split;
    for (int iu = 0; iu < grid.nu; ++iu) {
        const double x = grid.u(iu);
        {
            detail::RootTracker tr = row_state[iu];
            QuadC acc = H[iu];
            Complex prev(x, y0);
            for (int iv = iv_split; iv < grid.nv; ++iv) {
                Complex pt(x, grid.v(iv));
                acc = acc + tracked_segment(f, tr, prev, pt, seg_tol);
                out.psi.at(iu, iv) = acc;
                out.phi.at(iu, iv) = tr.rot() * f.phi(pt);
                prev = pt;
            }
        }
        {
            detail::RootTracker tr = row_state[iu];
            QuadC acc = H[iu];
            Complex prev(x, y0);
            for (int iv = iv_split - 1; iv >= 0; --iv) {
                Complex pt(x, grid.v(iv));
                acc = acc + tracked_segment(f, tr, prev, pt, seg_tol);
                out.psi.at(iu, iv) = acc;
                out.phi.at(iu, iv) = tr.rot() * f.phi(pt);
                prev = pt;
            }
        }
    }

    // path independence spot checks against the other L-path order
    const int spots[5][2] = {{0, 0},
                             {grid.nu - 1, 0},
                             {0, grid.nv - 1},
                             {grid.nu - 1, grid.nv - 1},
                             {grid.nu / 2, grid.nv / 2}};
    double scale = 1.0;
    for (auto& s : spots) scale = std::max(scale, out.psi.at(s[0], s[1]).max_abs());
    for (auto& s : spots) {
        QuadC alt = psi_L_vertical_first(f, t0, grid.point(s[0], s[1]), seg_tol);
        double diff = (alt - out.psi.at(s[0], s[1])).max_abs();
        if (diff > 1e-9 * scale) {
            throw QuadratureError("path dependence detected in the primitive of phi");
        }
    }
    return out;
}

void append_g17(std::string& out, double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    out += buf;
}

}  // namespace

Field<QuadC> integrate_psi(const PhiSource& src, const GridSpec& grid, Complex t0, double abs_tol) {
    return build_psi_phi(src, grid, t0, abs_tol).psi;
}

SurfacePatch build_patch(const PhiSource& src, const GridSpec& grid, Complex t0, double theta) {
    PsiPhiGrid pp = build_psi_phi(src, grid, t0, 1e-10);
    SurfacePatch patch;
    patch.grid = grid;
    patch.t0 = t0;
    patch.theta = theta;
    patch.psi = std::move(pp.psi.data);
    patch.phi = std::move(pp.phi.data);
    patch.x.resize(grid.size());
    Complex rot = std::polar(1.0, -theta);
    for (int i = 0; i < grid.size(); ++i) {
        for (int k = 0; k < 4; ++k) patch.x[i][k] = (rot * patch.psi[i][k]).real();
    }
    if (const HolPair* p = std::get_if<HolPair>(&src)) {
        patch.branch_sign = p->branch_sign;
        patch.provenance = "pair g1=" + p->g1.str() + " g2=" + p->g2.str() +
                           " branch_sign=" + std::to_string(p->branch_sign);
    } else {
        const HolTriple& tr = std::get<HolTriple>(src);
        patch.provenance =
            "triple f=" + tr.f.str() + " g1=" + tr.g1.str() + " g2=" + tr.g2.str();
    }
    return patch;
}

PatchVerification verify_patch(const SurfacePatch& patch, const PhiSource& src) {
    (void)src;  // the patch carries its own branch-consistent phi field
    const GridSpec& g = patch.grid;
    PatchVerification rep;
    Complex rot = std::polar(1.0, -patch.theta);
    const double h = g.h;

    auto xat = [&](int iu, int iv) { return patch.x[g.index(iu, iv)]; };

    for (int iv = 1; iv + 1 < g.nv; ++iv)
        for (int iu = 1; iu + 1 < g.nu; ++iu) {
            Vec4 xu{}, xv{}, lap{};
            for (int k = 0; k < 4; ++k) {
                xu[k] = (xat(iu + 1, iv)[k] - xat(iu - 1, iv)[k]) / (2.0 * h);
                xv[k] = (xat(iu, iv + 1)[k] - xat(iu, iv - 1)[k]) / (2.0 * h);
                lap[k] = (xat(iu + 1, iv)[k] + xat(iu - 1, iv)[k] + xat(iu, iv + 1)[k] +
                          xat(iu, iv - 1)[k] - 4.0 * xat(iu, iv)[k]) /
                         (h * h);
            }
            QuadC phi_theta = rot * patch.phi[g.index(iu, iv)];
            double e_exact = 0.5 * herm_norm_sq(phi_theta);
            double E = xu[0] * xu[0] + xu[1] * xu[1] - xu[2] * xu[2] - xu[3] * xu[3];
            double G = xv[0] * xv[0] + xv[1] * xv[1] - xv[2] * xv[2] - xv[3] * xv[3];
            double F = xu[0] * xv[0] + xu[1] * xv[1] - xu[2] * xv[2] - xu[3] * xv[3];
            for (int k = 0; k < 4; ++k) {
                rep.max_xu_error = std::max(rep.max_xu_error, std::abs(xu[k] - phi_theta[k].real()));
                rep.max_xv_error = std::max(rep.max_xv_error, std::abs(xv[k] + phi_theta[k].imag()));
                rep.max_harmonic = std::max(rep.max_harmonic, std::abs(lap[k]));
            }
            rep.max_isothermal_F = std::max(rep.max_isothermal_F, std::abs(F));
            rep.max_isothermal_EG = std::max(rep.max_isothermal_EG, std::abs(E - G));
            rep.max_E_fd_error = std::max(rep.max_E_fd_error, std::abs(E - e_exact));
            double e0 = 0.5 * herm_norm_sq(patch.phi[g.index(iu, iv)]);
            rep.max_E_theta_error = std::max(rep.max_E_theta_error, std::abs(e_exact - e0));
        }
    return rep;
}

std::string export_patch(const SurfacePatch& patch, PatchFormat format) {
    const GridSpec& g = patch.grid;
    if (format == PatchFormat::Csv4d) {
        std::string out = "u,v,x1,x2,x3,x4\n";
        for (int iv = 0; iv < g.nv; ++iv)
            for (int iu = 0; iu < g.nu; ++iu) {
                const Vec4& x = patch.x[g.index(iu, iv)];
                append_g17(out, g.u(iu));
                out += ',';
                append_g17(out, g.v(iv));
                for (int k = 0; k < 4; ++k) {
                    out += ',';
                    append_g17(out, x[k]);
                }
                out += '\n';
            }
        return out;
    }
    nlohmann::ordered_json j;
    j["grid"] = {{"u0", g.u0}, {"u1", g.u1}, {"v0", g.v0}, {"v1", g.v1},
                 {"nu", g.nu}, {"nv", g.nv}, {"h", g.h}};
    j["t0"] = {patch.t0.real(), patch.t0.imag()};
    j["theta"] = patch.theta;
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (int iv = 0; iv < g.nv; ++iv)
        for (int iu = 0; iu < g.nu; ++iu) {
            const Vec4& x = patch.x[g.index(iu, iv)];
            pts.push_back({x[0], x[1], x[2], x[3]});
        }
    j["points"] = std::move(pts);
    j["provenance"] = {{"source", patch.provenance}, {"branch_sign", patch.branch_sign}};
    return j.dump(2);
}

ImportedPatch import_patch_csv(const std::string& text) {
    ImportedPatch out;
    std::size_t pos = text.find('\n');
    if (pos == std::string::npos || text.substr(0, pos) != "u,v,x1,x2,x3,x4") {
        throw Error("bad csv4d header");
    }
    ++pos;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) continue;
        double vals[6];
        const char* s = line.c_str();
        char* end = nullptr;
        for (int k = 0; k < 6; ++k) {
            vals[k] = std::strtod(s, &end);
            if (end == s) throw Error("bad csv4d row: " + line);
            s = (*end == ',') ? end + 1 : end;
        }
        out.u.push_back(vals[0]);
        out.v.push_back(vals[1]);
        out.x.push_back(Vec4{{vals[2], vals[3], vals[4], vals[5]}});
    }
    return out;
}

}  // namespace maxsurf
