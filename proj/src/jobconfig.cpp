#include "maxsurf/jobconfig.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "maxsurf/invariants.hpp"
#include "maxsurf/pdeverify.hpp"
#include "maxsurf/surface.hpp"
#include "maxsurf/transforms.hpp"

namespace maxsurf {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct Tols {
    double residual_bound = 1e-3;
    double field_agreement = 1e-8;
    double hyperplane = 1e-9;
    double degeneracy_rel = 1e-9;
    double quadrature_abs = 1e-10;
    double correspond_curvature = 1e-10;
    double correspond_E = 1e-12;
};

struct Job {
    GridSpec grid;
    Complex t0;
    std::string kind;  // pair | triple | r31
    HolPair pair;
    HolTriple triple;
    HolExpr g;  // r31
    double theta = 0.0;
    Tols tol;
    json raw;
};

Complex read_complex(const json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2) return Complex(j[0].get<double>(), j[1].get<double>());
    throw Error("expected a number or [re, im] pair");
}

Job parse_job(const json& cfg) {
    Job job;
    job.raw = cfg;
    const json& d = cfg.at("domain");
    job.grid = GridSpec::make(d.at("u0").get<double>(), d.at("u1").get<double>(),
                              d.at("v0").get<double>(), d.at("v1").get<double>(),
                              d.at("nu").get<int>(), d.at("nv").get<int>());
    if (cfg.contains("t0")) {
        job.t0 = read_complex(cfg.at("t0"));
    } else {
        job.t0 = Complex(0.5 * (job.grid.u0 + job.grid.u1), 0.5 * (job.grid.v0 + job.grid.v1));
    }
    const json& gen = cfg.at("generators");
    job.kind = gen.at("kind").get<std::string>();
    int branch = cfg.value("branch_sign", 1);
    if (branch != 1 && branch != -1) throw Error("branch_sign must be +1 or -1");
    if (job.kind == "pair") {
        job.pair = HolPair{parse(gen.at("g1").get<std::string>()),
                           parse(gen.at("g2").get<std::string>()), branch};
    } else if (job.kind == "triple") {
        job.triple = HolTriple{parse(gen.at("f").get<std::string>()),
                               parse(gen.at("g1").get<std::string>()),
                               parse(gen.at("g2").get<std::string>())};
    } else if (job.kind == "r31") {
        job.g = parse(gen.at("g").get<std::string>());
    } else {
        throw Error("generators.kind must be pair, triple or r31");
    }
    job.theta = cfg.value("theta", 0.0);
    if (cfg.contains("tolerances")) {
        const json& t = cfg.at("tolerances");
        job.tol.residual_bound = t.value("residual_bound", job.tol.residual_bound);
        job.tol.field_agreement = t.value("field_agreement", job.tol.field_agreement);
        job.tol.hyperplane = t.value("hyperplane", job.tol.hyperplane);
        job.tol.degeneracy_rel = t.value("degeneracy_rel", job.tol.degeneracy_rel);
        job.tol.quadrature_abs = t.value("quadrature_abs", job.tol.quadrature_abs);
        job.tol.correspond_curvature = t.value("correspond_curvature", job.tol.correspond_curvature);
        job.tol.correspond_E = t.value("correspond_E", job.tol.correspond_E);
    }
    return job;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write " + p.string());
    f << content;
}

ordered_json provenance_block(const Job& job) {
    ordered_json p;
    p["kind"] = job.kind;
    if (job.kind == "pair") {
        p["g1"] = job.pair.g1.str();
        p["g2"] = job.pair.g2.str();
        p["branch_sign"] = job.pair.branch_sign;
    } else if (job.kind == "triple") {
        p["f"] = job.triple.f.str();
        p["g1"] = job.triple.g1.str();
        p["g2"] = job.triple.g2.str();
    } else {
        p["g"] = job.g.str();
    }
    p["domain"] = {{"u0", job.grid.u0}, {"u1", job.grid.u1}, {"v0", job.grid.v0},
                   {"v1", job.grid.v1}, {"nu", job.grid.nu}, {"nv", job.grid.nv}};
    p["tolerances"] = {{"residual_bound", job.tol.residual_bound},
                       {"field_agreement", job.tol.field_agreement},
                       {"hyperplane", job.tol.hyperplane},
                       {"degeneracy_rel", job.tol.degeneracy_rel},
                       {"quadrature_abs", job.tol.quadrature_abs}};
    return p;
}

void append_g17(std::string& out, double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    out += buf;
}

const char* class_name(PointClass c) {
    switch (c) {
        case PointClass::Valid: return "valid";
        case PointClass::MetricDegenerate: return "metric-degenerate";
        case PointClass::DegeneratePoint: return "degenerate-point";
        case PointClass::SingularEvaluation: return "singular-evaluation";
    }
    return "?";
}

ordered_json validity_json(const ValidityReport& rep) {
    ordered_json v;
    v["n_valid"] = rep.n_valid;
    v["n_metric_degenerate"] = rep.n_metric_degenerate;
    v["n_degenerate"] = rep.n_degenerate;
    v["n_singular"] = rep.n_singular;
    ordered_json bad = ordered_json::array();
    const GridSpec& g = rep.grid;
    for (int iv = 0; iv < g.nv; ++iv)
        for (int iu = 0; iu < g.nu; ++iu) {
            PointClass c = rep.points[g.index(iu, iv)];
            if (c == PointClass::Valid) continue;
            bad.push_back({{"u", g.u(iu)}, {"v", g.v(iv)}, {"class", class_name(c)}});
        }
    v["violations"] = std::move(bad);
    return v;
}

int cmd_invariants(const Job& job, const std::filesystem::path& out, std::string* log) {
    ordered_json summary;
    summary["provenance"] = provenance_block(job);
    if (job.kind == "pair") {
        ValidityReport rep = validity_report(job.pair, job.grid, job.tol.degeneracy_rel);
        InvariantField f = invariant_field(job.pair, job.grid, job.tol.degeneracy_rel);
        write_file(out / "invariants.csv", invariant_field_csv(f));
        double mn = std::numeric_limits<double>::infinity(), mx = -mn;
        for (int i = 0; i < job.grid.size(); ++i) {
            if (!f.mask[i]) continue;
            double v = f.K[i] - std::abs(f.kappa[i]);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        summary["K_minus_abs_kappa"] = {{"min", mn}, {"max", mx}};
        summary["validity"] = validity_json(rep);
        write_file(out / "summary.json", summary.dump(2));
        if (!rep.all_valid()) {
            if (log) *log += "validity violations: see summary.json\n";
            return 2;
        }
        return 0;
    }
    if (job.kind == "r31") {
        std::string csv = "u,v,E,nu,valid\n";
        int n_bad = 0;
        double mn = std::numeric_limits<double>::infinity(), mx = -mn;
        for (int iv = 0; iv < job.grid.nv; ++iv)
            for (int iu = 0; iu < job.grid.nu; ++iu) {
                Complex t = job.grid.point(iu, iv);
                double E = std::numeric_limits<double>::quiet_NaN(), nu = E;
                int ok = 0;
                try {
                    R31Invariants r = r31_invariants(job.g, t);
                    E = r.E;
                    nu = r.nu;
                    ok = 1;
                    mn = std::min(mn, nu);
                    mx = std::max(mx, nu);
                } catch (const Error&) {
                    ++n_bad;
                }
                append_g17(csv, t.real());
                csv += ',';
                append_g17(csv, t.imag());
                csv += ',';
                append_g17(csv, E);
                csv += ',';
                append_g17(csv, nu);
                csv += ',';
                csv += ok ? '1' : '0';
                csv += '\n';
            }
        write_file(out / "invariants.csv", csv);
        summary["nu"] = {{"min", mn}, {"max", mx}};
        summary["invalid_points"] = n_bad;
        write_file(out / "summary.json", summary.dump(2));
        return n_bad == 0 ? 0 : 2;
    }
    // triple
    ValidityReport rep = validity_report(job.triple, job.grid, job.tol.degeneracy_rel);
    std::string csv = "u,v,E,K,kappa,valid\n";
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    for (int iv = 0; iv < job.grid.nv; ++iv)
        for (int iu = 0; iu < job.grid.nu; ++iu) {
            Complex t = job.grid.point(iu, iv);
            int i = job.grid.index(iu, iv);
            double E = std::numeric_limits<double>::quiet_NaN(), K = E, kap = E;
            int ok = 0;
            if (rep.points[i] == PointClass::Valid) {
                GeneralInvariants gi = general_invariants(job.triple, t);
                E = gi.E;
                K = gi.K;
                kap = gi.kappa;
                ok = 1;
                mn = std::min(mn, K - std::abs(kap));
                mx = std::max(mx, K - std::abs(kap));
            }
            append_g17(csv, t.real());
            csv += ',';
            append_g17(csv, t.imag());
            csv += ',';
            append_g17(csv, E);
            csv += ',';
            append_g17(csv, K);
            csv += ',';
            append_g17(csv, kap);
            csv += ',';
            csv += ok ? '1' : '0';
            csv += '\n';
        }
    write_file(out / "invariants.csv", csv);
    summary["K_minus_abs_kappa"] = {{"min", mn}, {"max", mx}};
    summary["validity"] = validity_json(rep);
    write_file(out / "summary.json", summary.dump(2));
    return rep.all_valid() ? 0 : 2;
}

std::vector<ResidualReport> run_verify_group(const Job& job, const std::string& which,
                                             const GridSpec& grid, FrenetReport* frenet_out,
                                             std::vector<Field<double>>* fields) {
    if (job.kind == "r31") {
        if (which != "r31") throw Error("r31 generators only support which = r31");
        Field<double> nu(grid);
        Mask mask(grid.size(), 0);
        for (int iv = 0; iv < grid.nv; ++iv)
            for (int iu = 0; iu < grid.nu; ++iu) {
                try {
                    nu.at(iu, iv) = r31_invariants(job.g, grid.point(iu, iv)).nu;
                    mask[grid.index(iu, iv)] = 1;
                } catch (const Error&) {
                }
            }
        Field<double> res;
        ResidualReport rep = residual_r31(nu, mask, &res);
        if (fields) *fields = {std::move(res)};
        return {rep};
    }
    if (job.kind != "pair") throw Error("verify requires pair or r31 generators");
    if (which == "frenet") {
        FrenetReport fr = frenet_residual(job.pair, grid);
        if (fields) *fields = fr.fields;
        if (frenet_out) *frenet_out = std::move(fr);
        return frenet_out ? frenet_out->equations : fr.equations;
    }
    InvariantField inv = invariant_field(job.pair, grid, job.tol.degeneracy_rel);
    if (which == "natural-kkappa") return residual_natural_K_kappa(inv, fields);
    if (which == "natural-numu") return residual_natural_nu_mu(inv, fields);
    if (which == "gauss") {
        Field<double> res;
        ResidualReport rep = residual_gauss(inv, &res);
        if (fields) *fields = {std::move(res)};
        return {rep};
    }
    if (which == "ricci") {
        Field<double> res;
        ResidualReport rep = residual_ricci(inv, &res);
        if (fields) *fields = {std::move(res)};
        return {rep};
    }
    throw Error("unknown verify target: " + which);
}

int cmd_verify(const Job& job, const std::filesystem::path& out, std::string* log) {
    std::string which = job.raw.value("verify", json::object()).value("which", "natural-kkappa");
    bool refine = job.raw.value("verify", json::object()).value("refine", true);

    FrenetReport frenet;
    std::vector<Field<double>> coarse_fields;
    std::vector<ResidualReport> coarse =
        run_verify_group(job, which, job.grid, &frenet, &coarse_fields);
    if (refine) {
        std::vector<Field<double>> fine_fields;
        run_verify_group(job, which, job.grid.refined(), nullptr, &fine_fields);
        for (std::size_t k = 0; k < coarse.size() && k < fine_fields.size(); ++k) {
            double ratio = shared_interior_ratio(coarse_fields[k], fine_fields[k]);
            coarse[k].order_estimate = order_estimate(ratio, 1.0);
        }
    }
    ordered_json doc;
    doc["provenance"] = provenance_block(job);
    doc["which"] = which;
    if (which == "frenet") doc["mu_zero_branch"] = frenet.mu_zero_branch;
    doc["reports"] = json::parse(residual_reports_json(coarse));
    write_file(out / "residuals.json", doc.dump(2));

    double worst = 0.0;
    for (const ResidualReport& r : coarse) worst = std::max(worst, r.max_abs);
    if (log) *log += "max residual " + std::to_string(worst) + "\n";
    // the dphi/dtbar equation is an identity whose residual only reflects
    // rounding; it still counts against the bound like the rest
    return worst <= job.tol.residual_bound ? 0 : 3;
}

int cmd_build(const Job& job, const std::filesystem::path& out, std::string* log) {
    PhiSource src;
    if (job.kind == "pair") src = job.pair;
    else if (job.kind == "triple") src = job.triple;
    else throw Error("build requires pair or triple generators");

    SurfacePatch patch = build_patch(src, job.grid, job.t0, job.theta);
    write_file(out / "patch.csv", export_patch(patch, PatchFormat::Csv4d));
    write_file(out / "patch.json", export_patch(patch, PatchFormat::Json));
    PatchVerification v = verify_patch(patch, src);
    ordered_json doc;
    doc["provenance"] = provenance_block(job);
    doc["theta"] = job.theta;
    doc["t0"] = {job.t0.real(), job.t0.imag()};
    doc["verification"] = {{"max_xu_error", v.max_xu_error},
                           {"max_xv_error", v.max_xv_error},
                           {"max_isothermal_F", v.max_isothermal_F},
                           {"max_isothermal_EG", v.max_isothermal_EG},
                           {"max_harmonic", v.max_harmonic},
                           {"max_E_fd_error", v.max_E_fd_error},
                           {"max_E_theta_error", v.max_E_theta_error}};
    write_file(out / "build.json", doc.dump(2));
    if (log) *log += "patch written (" + std::to_string(job.grid.size()) + " points)\n";
    return 0;
}

MoebiusParams read_moebius(const json& j) {
    return MoebiusParams(read_complex(j.at("a")), read_complex(j.at("b")));
}

int cmd_transform(const Job& job, const std::filesystem::path& out, std::string* log) {
    if (job.kind != "pair") throw Error("transform requires pair generators");
    std::string kind = job.raw.value("transform", "motion");
    const GridSpec& grid = job.grid;
    InvariantField base = invariant_field(job.pair, grid, job.tol.degeneracy_rel);

    ordered_json doc;
    doc["provenance"] = provenance_block(job);
    doc["transform"] = kind;
    double worst = 0.0;
    double scale = 1e-300;
    for (int i = 0; i < grid.size(); ++i)
        if (base.mask[i]) scale = std::max(scale, std::abs(base.K[i]));

    auto sample_points = [&](int stride) {
        std::vector<std::pair<int, int>> pts;
        for (int iv = 1; iv + 1 < grid.nv; iv += stride)
            for (int iu = 1; iu + 1 < grid.nu; iu += stride)
                if (base.mask[grid.index(iu, iv)]) pts.emplace_back(iu, iv);
        return pts;
    };

    if (kind == "motion") {
        const json& mj = job.raw.at("motion");
        MotionSpec ms{read_moebius(mj.at("m1")), read_moebius(mj.at("m2")),
                      mj.value("swap", false)};
        HolPair tp = motion_transform_pair(ms, job.pair);
        doc["result"] = {{"g1", tp.g1.str()}, {"g2", tp.g2.str()}};
        doc["proper"] = ms.proper();
        doc["orthochronous"] = ms.orthochronous();
        InvariantField tf = invariant_field(tp, grid, job.tol.degeneracy_rel);
        double kappa_sign = ms.proper() ? 1.0 : -1.0;
        for (int i = 0; i < grid.size(); ++i) {
            if (!base.mask[i] || !tf.mask[i]) continue;
            worst = std::max(worst, std::abs(tf.K[i] - base.K[i]));
            worst = std::max(worst, std::abs(tf.kappa[i] - kappa_sign * base.kappa[i]));
        }
        doc["max_invariant_diff"] = worst;
    } else if (kind == "homothety") {
        double k = job.raw.value("homothety_k", 1.0);
        HolPair tp = homothety_pair(job.pair, k);
        doc["result"] = {{"g1", tp.g1.str()}, {"g2", tp.g2.str()}, {"k", k}};
        // K_hat(s) = K(s/sqrt(k))/k^2 at sampled points
        for (auto [iu, iv] : sample_points(4)) {
            Complex s = grid.point(iu, iv) * std::sqrt(k);
            InvariantSample hat = canonical_invariants(tp, s);
            InvariantSample ref = canonical_invariants(job.pair, grid.point(iu, iv));
            worst = std::max(worst, std::abs(hat.K - ref.K / (k * k)));
            worst = std::max(worst, std::abs(hat.kappa - ref.kappa / (k * k)));
        }
        doc["max_invariant_diff"] = worst;
    } else if (kind == "associated") {
        HolPair tp = associated_pair(job.pair, job.theta);
        doc["result"] = {{"g1", tp.g1.str()}, {"g2", tp.g2.str()}, {"theta", job.theta}};
        Complex rot = std::polar(1.0, 0.5 * job.theta);
        for (auto [iu, iv] : sample_points(4)) {
            Complex s = grid.point(iu, iv);
            InvariantSample lhs = canonical_invariants(tp, s);
            InvariantSample rhs = canonical_invariants(job.pair, rot * s);
            worst = std::max(worst, std::abs(lhs.E - rhs.E));
            worst = std::max(worst, std::abs(lhs.K - rhs.K));
        }
        doc["max_invariant_diff"] = worst;
    } else if (kind == "coordinate_change") {
        const json& cj = job.raw.at("coordinate_change");
        Complex delta = read_complex(cj.at("delta"));
        Complex c = read_complex(cj.value("c", json::array({0.0, 0.0})));
        bool antiholo = cj.value("antiholo", false);
        ChangedPair cp = coordinate_change_pair(job.pair, delta, c, antiholo);
        for (auto [iu, iv] : sample_points(4)) {
            Complex s = grid.point(iu, iv);
            Complex t = antiholo ? delta * std::conj(s) + c : delta * s + c;
            InvariantSample rhs;
            try {
                rhs = canonical_invariants(job.pair, t);
            } catch (const Error&) {
                continue;  // mapped point left the valid region
            }
            InvariantSample lhs = std::holds_alternative<HolPair>(cp)
                                      ? canonical_invariants(std::get<HolPair>(cp), s)
                                      : canonical_invariants(std::get<EvalPair>(cp), s);
            worst = std::max(worst, std::abs(lhs.K - rhs.K));
            worst = std::max(worst, std::abs(lhs.kappa - rhs.kappa));
        }
        doc["result"] = {{"antiholo", antiholo}};
        doc["max_invariant_diff"] = worst;
    } else if (kind == "hyperplane") {
        HyperplaneResult hr = hyperplane_test(job.pair, grid, job.tol.hyperplane);
        doc["in_hyperplane"] = hr.in_hyperplane;
        doc["max_abs_kappa"] = hr.max_abs_kappa;
        if (hr.moebius) {
            doc["moebius"] = {{"a", {hr.moebius->a.real(), hr.moebius->a.imag()}},
                              {"b", {hr.moebius->b.real(), hr.moebius->b.imag()}},
                              {"fit_residual", hr.fit_residual}};
        }
        write_file(out / "transform.json", doc.dump(2));
        return 0;
    } else if (kind == "equivalence") {
        const json& oj = job.raw.at("equivalence_other");
        HolPair other{parse(oj.at("g1").get<std::string>()), parse(oj.at("g2").get<std::string>())};
        auto res = equivalence_test(job.pair, other, grid, job.tol.field_agreement);
        doc["equivalent"] = res.has_value();
        if (res) {
            doc["m1"] = {{"a", {res->first.a.real(), res->first.a.imag()}},
                         {"b", {res->first.b.real(), res->first.b.imag()}}};
            doc["m2"] = {{"a", {res->second.a.real(), res->second.a.imag()}},
                         {"b", {res->second.b.real(), res->second.b.imag()}}};
        }
        write_file(out / "transform.json", doc.dump(2));
        return 0;
    } else {
        throw Error("unknown transform: " + kind);
    }

    write_file(out / "transform.json", doc.dump(2));
    if (log) *log += "max invariant difference " + std::to_string(worst) + "\n";
    return worst <= job.tol.field_agreement * std::max(1.0, scale) ? 0 : 3;
}

int cmd_correspond(const Job& job, const std::filesystem::path& out, std::string* log) {
    if (job.kind != "pair") throw Error("correspond requires pair generators");
    const GridSpec& grid = job.grid;
    InvariantField inv = invariant_field(job.pair, grid, job.tol.degeneracy_rel);

    Field<double> nu1(grid), nu2(grid);
    Mask mask(grid.size(), 0);
    double max_curv_diff = 0.0, max_E_diff = 0.0, max_roundtrip = 0.0;
    for (int iv = 0; iv < grid.nv; ++iv)
        for (int iu = 0; iu < grid.nu; ++iu) {
            int i = grid.index(iu, iv);
            if (!inv.mask[i]) continue;
            Complex t = grid.point(iu, iv);
            R31Invariants r1, r2;
            try {
                r1 = r31_invariants(job.pair.g1, t);
                r2 = r31_invariants(job.pair.g2, t);
            } catch (const Error&) {
                continue;
            }
            nu1.at(iu, iv) = r1.nu;
            nu2.at(iu, iv) = r2.nu;
            mask[i] = 1;
            auto [K, kap] = correspond_to_r42(r1.nu, r2.nu);
            max_curv_diff = std::max({max_curv_diff, std::abs(K - inv.K[i]),
                                      std::abs(kap - inv.kappa[i])});
            max_E_diff = std::max(max_E_diff, std::abs(geometric_mean_E(r1.E, r2.E) - inv.E[i]));
            auto [b1, b2] = correspond_from_r42(inv.K[i], inv.kappa[i]);
            max_roundtrip = std::max({max_roundtrip, std::abs(b1 - r1.nu), std::abs(b2 - r2.nu)});
        }

    ResidualReport res1 = residual_r31(nu1, mask);
    res1.equation_id = "natural_r31_nu1";
    ResidualReport res2 = residual_r31(nu2, mask);
    res2.equation_id = "natural_r31_nu2";

    ordered_json doc;
    doc["provenance"] = provenance_block(job);
    doc["max_curvature_diff"] = max_curv_diff;
    doc["max_E_diff"] = max_E_diff;
    doc["max_roundtrip_diff"] = max_roundtrip;
    doc["reports"] = json::parse(residual_reports_json({res1, res2}));
    write_file(out / "correspond.json", doc.dump(2));
    if (log) {
        *log += "curvature diff " + std::to_string(max_curv_diff) + ", E diff " +
                std::to_string(max_E_diff) + "\n";
    }
    bool ok = max_curv_diff <= job.tol.correspond_curvature && max_E_diff <= job.tol.correspond_E &&
              max_roundtrip <= job.tol.correspond_curvature &&
              res1.max_abs <= job.tol.residual_bound && res2.max_abs <= job.tol.residual_bound;
    return ok ? 0 : 3;
}

}  // namespace

int run_job(const std::string& command, const std::string& config_json_text,
            const std::string& out_dir, std::string* log) {
    json cfg;
    try {
        cfg = json::parse(config_json_text);
    } catch (const json::exception& e) {
        if (log) *log += std::string("config parse error: ") + e.what() + "\n";
        return 1;
    }
    std::filesystem::path out(out_dir.empty() ? "." : out_dir);
    try {
        std::filesystem::create_directories(out);
        Job job = parse_job(cfg);
        if (command == "invariants") return cmd_invariants(job, out, log);
        if (command == "verify") return cmd_verify(job, out, log);
        if (command == "build") return cmd_build(job, out, log);
        if (command == "transform") return cmd_transform(job, out, log);
        if (command == "correspond") return cmd_correspond(job, out, log);
        if (log) *log += "unknown command: " + command + "\n";
        return 1;
    } catch (const json::exception& e) {
        if (log) *log += std::string("config error: ") + e.what() + "\n";
        return 1;
    } catch (const ParseError& e) {
        if (log) *log += std::string("expression error: ") + e.what() + "\n";
        return 1;
    } catch (const DomainError& e) {
        if (log) *log += std::string("domain error: ") + e.what() + "\n";
        return 2;
    } catch (const EvalError& e) {
        if (log) *log += std::string("evaluation error: ") + e.what() + "\n";
        return 2;
    } catch (const QuadratureError& e) {
        if (log) *log += std::string("quadrature error: ") + e.what() + "\n";
        return 2;
    } catch (const Error& e) {
        if (log) *log += std::string("error: ") + e.what() + "\n";
        return 1;
    }
}

}  // namespace maxsurf
