#include <algorithm>
#include <cstdlib>
#include <random>
#include <sstream>

#include "doctest.h"
#include "maxsurf/invariants.hpp"
#include "maxsurf/pdeverify.hpp"
#include "test_util.hpp"

using namespace maxsurf;
using testutil::rel_err;

TEST_CASE("canonical invariants: frozen spot values") {
    HolPair p{parse("z"), parse("2*z")};
    InvariantSample s = canonical_invariants(p, Complex(2, 0));
    CHECK(rel_err(s.E, 45.0 / 8.0) < 1e-12);
    CHECK(rel_err(s.K, 464.0 / 10125.0) < 1e-12);
    CHECK(rel_err(s.kappa, -336.0 / 10125.0) < 1e-12);
    CHECK(rel_err(s.nu, 0.19676394329936582510) < 1e-12);
    CHECK(rel_err(s.mu, -0.08432740427115678219) < 1e-12);

    HolPair q{parse("2+z"), parse("2*exp(z)")};
    InvariantSample r = canonical_invariants(q, Complex(0, 0));
    CHECK(rel_err(r.E, 9.0 / 8.0) < 1e-12);
    CHECK(rel_err(r.K, 80.0 / 81.0) < 1e-12);
    CHECK(rel_err(r.kappa, 16.0 / 27.0) < 1e-12);
    CHECK(rel_err(r.nu, 2.0 * M_SQRT2 / 3.0) < 1e-12);
    CHECK(rel_err(r.mu, 2.0 * M_SQRT2 / 9.0) < 1e-12);
}

TEST_CASE("canonical invariants: internal relations on random samples") {
    std::mt19937 rng(55);
    for (const auto& fx : testutil::pair_fixtures()) {
        HolPair p = testutil::make_pair(fx);
        for (int k = 0; k < 25; ++k) {
            InvariantSample s = canonical_invariants(p, testutil::random_point(rng, fx.dom));
            CHECK(rel_err(s.K, s.nu * s.nu + s.mu * s.mu) < 1e-12);
            CHECK(rel_err(s.kappa, 2.0 * s.nu * s.mu) < 1e-12);
            CHECK(rel_err(s.E, 1.0 / std::sqrt(s.nu * s.nu - s.mu * s.mu)) < 1e-12);
            CHECK(rel_err(s.E, E_from_curvatures(s.K, s.kappa)) < 1e-12);
            CHECK(s.K >= std::abs(s.kappa));
            CHECK(s.nu > std::abs(s.mu));
        }
    }

    // equal generators kill mu and kappa
    HolPair eq{parse("2+z"), parse("2+z")};
    InvariantSample e = canonical_invariants(eq, Complex(0.2, -0.1));
    CHECK(std::abs(e.mu) < 1e-12);
    CHECK(std::abs(e.kappa) < 1e-12);

    // close enough to a degenerate point the near-degenerate flag trips
    HolPair dp{parse("z^2"), parse("2*z")};
    CHECK(canonical_invariants(dp, Complex(1e-12, 0)).near_degenerate);
    CHECK_FALSE(canonical_invariants(dp, Complex(0.1, 0.1)).near_degenerate);

    CHECK_THROWS_AS(canonical_invariants(HolPair{parse("2+z"), parse("0.5*z")}, Complex(0, 0)),
                    DomainError);
}

TEST_CASE("general invariants") {
    HolTriple tr{parse("1"), parse("z"), parse("2*z")};
    GeneralInvariants gi = general_invariants(tr, Complex(2, 0));
    CHECK(rel_err(gi.E, 45.0) < 1e-12);

    // scaling f by k scales E by k^2 and the curvatures by 1/k^2
    HolTriple scaled{parse("3"), parse("z"), parse("2*z")};
    GeneralInvariants gs = general_invariants(scaled, Complex(2, 0));
    CHECK(rel_err(gs.E, 9.0 * gi.E) < 1e-12);
    CHECK(rel_err(gs.K, gi.K / 9.0) < 1e-12);
    CHECK(rel_err(gs.kappa, gi.kappa / 9.0) < 1e-12);

    // canonical f reproduces the canonical invariants exactly
    HolTriple can{parse("0.5/sqrt(2)"), parse("z"), parse("2*z")};
    GeneralInvariants gc = general_invariants(can, Complex(2, 0));
    InvariantSample s = canonical_invariants(HolPair{parse("z"), parse("2*z")}, Complex(2, 0));
    CHECK(rel_err(gc.E, s.E) < 1e-12);
    CHECK(rel_err(gc.K, s.K) < 1e-12);
    CHECK(rel_err(gc.kappa, s.kappa) < 1e-12);
}

TEST_CASE("normal curvature <-> curvature conversions") {
    CHECK(curvatures_from_normal(1, 0) == std::pair{1.0, 0.0});
    CHECK(curvatures_from_normal(2, 1) == std::pair{5.0, 4.0});
    auto [K, kap] = curvatures_from_normal(2.0 * M_SQRT2 / 3.0, 2.0 * M_SQRT2 / 9.0);
    CHECK(rel_err(K, 80.0 / 81.0) < 1e-12);
    CHECK(rel_err(kap, 16.0 / 27.0) < 1e-12);

    CHECK(normal_from_curvatures(1, 0) == std::pair{1.0, 0.0});
    auto [nu54, mu54] = normal_from_curvatures(5, 4);
    CHECK(rel_err(nu54, 2.0) < 1e-12);
    CHECK(rel_err(mu54, 1.0) < 1e-12);
    auto [nu53, mu53] = normal_from_curvatures(5, 3);
    CHECK(rel_err(nu53, 0.5 * (std::sqrt(8.0) + M_SQRT2)) < 1e-12);
    CHECK(rel_err(mu53, 0.5 * (std::sqrt(8.0) - M_SQRT2)) < 1e-12);

    CHECK_THROWS_AS(curvatures_from_normal(1, 2), DomainError);
    CHECK_THROWS_AS(normal_from_curvatures(1, 1), DomainError);

    std::mt19937 rng(66);
    std::uniform_real_distribution<double> d(0.01, 10.0);
    for (int k = 0; k < 100; ++k) {
        double nu = d(rng);
        double mu = std::uniform_real_distribution<double>(-0.99, 0.99)(rng) * nu;
        auto [kk, ka] = curvatures_from_normal(nu, mu);
        auto [n2, m2] = normal_from_curvatures(kk, ka);
        CHECK(rel_err(n2, nu) < 1e-12);
        CHECK(rel_err(m2, mu) < 1e-12);
    }
}

TEST_CASE("E from curvatures") {
    CHECK(E_from_curvatures(1, 0) == 1.0);
    CHECK(rel_err(E_from_curvatures(5, 3), 0.5) < 1e-12);
    HolPair p{parse("z"), parse("2*z")};
    InvariantSample s = canonical_invariants(p, Complex(2, 0));
    CHECK(rel_err(E_from_curvatures(s.K, s.kappa), 45.0 / 8.0) < 1e-10);
    CHECK_THROWS_AS(E_from_curvatures(1, 1), DomainError);
}

TEST_CASE("ellipse semi-axes") {
    HolPair p{parse("z"), parse("2*z")};
    auto [major, minor] = ellipse_axes(p, Complex(2, 0));
    CHECK(rel_err(major, 0.19676394329936582510) < 1e-9);
    CHECK(rel_err(minor, 0.08432740427115678219) < 1e-9);
    CHECK(major >= minor);

    HolPair eq{parse("2+z"), parse("2+z")};
    auto [ma, mi] = ellipse_axes(eq, Complex(0.1, 0.1));
    CHECK(mi < 1e-12);
    CHECK(ma > 0);

    // near a degenerate point of (z^2, 2z) the ellipse approaches a circle
    HolPair dp{parse("z^2"), parse("2*z")};
    auto [a1, b1] = ellipse_axes(dp, Complex(0.01, 0.01));
    CHECK((a1 - b1) / a1 < 0.1);
}

TEST_CASE("r31 invariants") {
    R31Invariants a = r31_invariants(parse("z"), Complex(2, 0));
    CHECK(rel_err(a.nu, 4.0 / 9.0) < 1e-12);
    CHECK(rel_err(a.E, 9.0 / 4.0) < 1e-12);
    R31Invariants b = r31_invariants(parse("2*z"), Complex(1, 0));
    CHECK(rel_err(b.nu, 16.0 / 9.0) < 1e-12);
    CHECK(rel_err(b.E, 9.0 / 16.0) < 1e-12);

    std::mt19937 rng(77);
    std::uniform_real_distribution<double> d(1.1, 3.0);
    for (int k = 0; k < 30; ++k) {
        R31Invariants r = r31_invariants(parse("z^2"), Complex(d(rng), d(rng)));
        CHECK(rel_err(r.E * r.nu, 1.0) < 1e-12);
    }
}

TEST_CASE("correspondence between the 4-space and 3-space curvatures") {
    auto [Ke, ke] = correspond_to_r42(3.0, 3.0);
    CHECK(rel_err(Ke, 9.0) < 1e-12);
    CHECK(std::abs(ke) < 1e-12);
    auto [K14, k14] = correspond_to_r42(1.0, 4.0);
    CHECK(rel_err(K14, 5.0) < 1e-12);
    CHECK(rel_err(k14, 3.0) < 1e-12);

    auto [n1, n2] = correspond_from_r42(5.0, 3.0);
    CHECK(rel_err(n1, 1.0) < 1e-12);
    CHECK(rel_err(n2, 4.0) < 1e-12);
    auto [m1, m2] = correspond_from_r42(1.0, 0.0);
    CHECK(rel_err(m1, 1.0) < 1e-12);
    CHECK(rel_err(m2, 1.0) < 1e-12);

    std::mt19937 rng(88);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int k = 0; k < 100; ++k) {
        double nu1 = std::exp(d(rng)), nu2 = std::exp(d(rng));
        auto [K, kap] = correspond_to_r42(nu1, nu2);
        CHECK(K > std::abs(kap) - 1e-15 * K);
        auto [b1, b2] = correspond_from_r42(K, kap);
        CHECK(rel_err(b1, nu1) < 1e-12);
        CHECK(rel_err(b2, nu2) < 1e-12);
    }

    CHECK_THROWS_AS(correspond_to_r42(-1.0, 2.0), DomainError);
    CHECK_THROWS_AS(correspond_from_r42(1.0, 2.0), DomainError);
}

TEST_CASE("geometric mean of the first fundamental coefficients") {
    CHECK(geometric_mean_E(1, 1) == 1.0);
    CHECK(rel_err(geometric_mean_E(9.0 / 4.0, 9.0 / 16.0), 9.0 / 8.0) < 1e-12);

    HolPair p{parse("2+z"), parse("2*exp(z)")};
    R31Invariants r1 = r31_invariants(p.g1, Complex(0, 0));
    R31Invariants r2 = r31_invariants(p.g2, Complex(0, 0));
    InvariantSample s = canonical_invariants(p, Complex(0, 0));
    CHECK(rel_err(geometric_mean_E(r1.E, r2.E), s.E) < 1e-12);
    CHECK_THROWS_AS(geometric_mean_E(0.0, 1.0), DomainError);
}

TEST_CASE("splitting and reassembling the invariants of a pair") {
    std::mt19937 rng(99);
    for (const auto& fx : testutil::pair_fixtures()) {
        HolPair p = testutil::make_pair(fx);
        for (int k = 0; k < 10; ++k) {
            Complex t = testutil::random_point(rng, fx.dom);
            InvariantSample s = canonical_invariants(p, t);
            R31Invariants r1 = r31_invariants(p.g1, t);
            R31Invariants r2 = r31_invariants(p.g2, t);
            auto [K, kap] = correspond_to_r42(r1.nu, r2.nu);
            CHECK(std::abs(K - s.K) < 1e-10 * std::max(1.0, s.K));
            CHECK(std::abs(kap - s.kappa) < 1e-10 * std::max(1.0, s.K));
        }
    }
}

TEST_CASE("invariant field and CSV export") {
    GridSpec grid = GridSpec::make(1.5, 2.5, 0.0, 1.0, 9, 9);
    HolPair p{parse("z"), parse("2*z")};
    InvariantField f = invariant_field(p, grid);
    for (int i = 0; i < grid.size(); ++i) CHECK(f.mask[i] == 1);

    std::string csv = invariant_field_csv(f);
    CHECK(csv.rfind("u,v,E,K,kappa,nu,mu,valid\n", 0) == 0);
    // one line per point plus the header
    CHECK(std::count(csv.begin(), csv.end(), '\n') == grid.size() + 1);

    // the row of t = 2 (iu 4, iv 0) carries the frozen E value
    std::istringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    for (int skip = 0; skip <= grid.index(4, 0); ++skip) std::getline(ss, line);
    CHECK(line.rfind("2,0,5.625,", 0) == 0);

    // 17 significant digits round-trip: parse a kappa cell back
    double kap_back = 0.0;
    {
        std::istringstream row(line);
        std::string cell;
        for (int k = 0; k < 5; ++k) std::getline(row, cell, ',');
        kap_back = std::strtod(cell.c_str(), nullptr);
    }
    CHECK(kap_back == f.kappa[grid.index(4, 0)]);
}

TEST_CASE("beta field") {
    // equal generators: mu = 0 identically, so beta = 0
    GridSpec grid = GridSpec::make(-0.5, 0.5, -0.5, 0.5, 17, 17);
    InvariantField eq = invariant_field(HolPair{parse("2+z"), parse("2+z")}, grid);
    Mask bm;
    Field<Complex> beta = beta_field(eq, &bm);
    int n = 0;
    for (int i = 0; i < grid.size(); ++i) {
        if (!bm[i]) continue;
        CHECK(std::abs(beta[i]) < 1e-10);
        ++n;
    }
    CHECK(n == 15 * 15);
}

TEST_CASE("ricci identity residual shrinks at second order") {
    HolPair p{parse("z"), parse("2*z")};
    GridSpec coarse = GridSpec::make(1.5, 2.5, 0.0, 1.0, 33, 33);
    Field<double> resc, resf;
    ResidualReport rc = residual_ricci(invariant_field(p, coarse), &resc);
    residual_ricci(invariant_field(p, coarse.refined()), &resf);
    CHECK(rc.max_abs < 2e-2);
    double ratio = shared_interior_ratio(resc, resf);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("canonicalized invariants of a triple match the direct route") {
    HolTriple tr{parse("1"), parse("z"), parse("z^2")};
    for (double u : {1.5, 2.0, 2.5, 3.0, 4.0}) {
        Complex t(u, 0.2);
        GeneralInvariants gi = general_invariants(tr, t);
        InvariantSample s = canonicalized_invariants(tr, t);
        CHECK(rel_err(s.K, gi.K) < 1e-12);
        CHECK(rel_err(s.kappa, gi.kappa) < 1e-12);
        // E rescales by |ds/dt|^2
        double sp2 = std::norm(canonical_parameter_derivative(tr, t));
        CHECK(rel_err(s.E * sp2, gi.E) < 1e-12);
    }
}
