#include <random>

#include "doctest.h"
#include "maxsurf/weierstrass.hpp"
#include "test_util.hpp"

using namespace maxsurf;

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridSpec::make(0, 1, 0, 2, 9, 9), DomainError);  // non-square cells
    CHECK_THROWS_AS(GridSpec::make(0, 1, 0, 1, 4, 9), DomainError);  // too few points
    CHECK_THROWS_AS(GridSpec::make(1, 0, 0, 1, 9, 9), DomainError);  // reversed bounds
    GridSpec g = GridSpec::make(0, 1, 0, 1, 5, 5);
    CHECK(g.h == 0.25);
    CHECK(g.point(4, 0) == Complex(1.0, 0.0));
    CHECK(g.refined().nu == 9);
    CHECK(g.refined().h == 0.125);
}

TEST_CASE("phi_general") {
    HolTriple deg{parse("1"), parse("0"), parse("0")};
    QuadC phi = phi_general(deg, Complex(0.3, 0.4));
    CHECK(phi[0] == Complex(1, 0));
    CHECK(phi[1] == Complex(0, -1));
    CHECK(phi[2] == Complex(0, 0));
    CHECK(phi[3] == Complex(0, 0));
    CHECK(std::abs(bilinear(phi, phi)) == 0.0);

    HolTriple tr{parse("1"), parse("z"), parse("2*z")};
    CHECK(std::abs(herm_norm_sq(phi_general(tr, Complex(2, 0))) - 90.0) < 1e-12);

    std::mt19937 rng(31);
    for (const auto& fx : testutil::triple_fixtures()) {
        HolTriple t3 = testutil::make_triple(fx);
        for (int k = 0; k < 25; ++k) {
            Complex t = testutil::random_point(rng, fx.dom);
            QuadC f = phi_general(t3, t);
            CHECK(std::abs(bilinear(f, f)) <= 1e-12 * std::max(1.0, f.max_abs() * f.max_abs()));
        }
    }
}

TEST_CASE("phi_canonical satisfies the canonical condition") {
    HolPair p{parse("z"), parse("2*z")};
    CanonicalPhi P(p);
    Complex t(2, 0);
    QuadC dphi = P.dphi(t);
    CHECK(std::abs(bilinear(dphi, dphi) - Complex(-1, 0)) < 1e-10);

    std::mt19937 rng(32);
    for (const auto& fx : testutil::pair_fixtures()) {
        CanonicalPhi Q(testutil::make_pair(fx));
        for (int k = 0; k < 10; ++k) {
            Complex s = testutil::random_point(rng, fx.dom);
            QuadC d = Q.dphi(s);
            CHECK(std::abs(bilinear(d, d) - Complex(-1, 0)) < 1e-10);
        }
    }

    // second-type pairs have phi'^2 = +1 instead
    HolPair p2{parse("z"), parse("2*z"), 1, CanonicalType::Second};
    CanonicalPhi P2(p2);
    QuadC d2 = P2.dphi(t);
    CHECK(std::abs(bilinear(d2, d2) - Complex(1, 0)) < 1e-10);

    // equal generators zero the fourth component
    HolPair eq{parse("2+z"), parse("2+z")};
    QuadC phi_eq = phi_canonical(eq, Complex(0.1, 0.2));
    CHECK(std::abs(phi_eq[3]) < 1e-15);

    // the two branch signs differ by a global sign
    HolPair neg{parse("z"), parse("2*z"), -1};
    QuadC a = phi_canonical(p, t), b = phi_canonical(neg, t);
    CHECK((a + b).max_abs() < 1e-15);
}

TEST_CASE("recover_generators") {
    HolTriple tr{parse("1"), parse("z"), parse("2*z")};
    Complex t(2, 0);
    RecoveredGenerators rec = recover_generators(phi_general(tr, t));
    CHECK(std::abs(rec.f - Complex(1, 0)) < 1e-14);
    CHECK(std::abs(rec.g1 - Complex(2, 0)) < 1e-14);
    CHECK(std::abs(rec.g2 - Complex(4, 0)) < 1e-14);

    RecoveredGenerators c = recover_generators(QuadC{{1, Complex(0, -1), 0, 0}});
    CHECK(c.f == Complex(1, 0));
    CHECK(c.g1 == Complex(0, 0));
    CHECK(c.g2 == Complex(0, 0));

    // round trip through phi at random samples
    std::mt19937 rng(33);
    for (const auto& fx : testutil::pair_fixtures()) {
        HolPair p = testutil::make_pair(fx);
        for (int k = 0; k < 8; ++k) {
            Complex s = testutil::random_point(rng, fx.dom);
            QuadC phi = phi_canonical(p, s);
            RecoveredGenerators r = recover_generators(phi);
            CHECK(std::abs(r.g1 - p.g1(s)) <= 1e-12 * std::max(1.0, std::abs(r.g1)));
            CHECK(std::abs(r.g2 - p.g2(s)) <= 1e-12 * std::max(1.0, std::abs(r.g2)));
            QuadC again = phi_general(HolTriple{HolExpr::constant(r.f), HolExpr::constant(r.g1),
                                                HolExpr::constant(r.g2)},
                                      s);
            CHECK((again - phi).max_abs() <= 1e-12 * std::max(1.0, phi.max_abs()));
        }
    }

    CHECK_THROWS_AS(recover_generators(QuadC{{1, Complex(0, 1), 0, 0}}), DomainError);
}

TEST_CASE("validity_report") {
    GridSpec grid = GridSpec::make(1.5, 2.5, 0.0, 1.0, 11, 11);
    ValidityReport ok = validity_report(HolPair{parse("z"), parse("2*z")}, grid);
    CHECK(ok.all_valid());

    // mixed moduli near zero: |g1| > 1 but |g2| < 1
    // (the bounds make h = 1/16 exact, so the grid passes through 0)
    GridSpec near0 = GridSpec::make(-0.25, 0.25, -0.25, 0.25, 9, 9);
    ValidityReport mixed = validity_report(HolPair{parse("2+z"), parse("3*z")}, near0);
    CHECK(mixed.n_metric_degenerate > 0);
    CHECK_FALSE(mixed.all_valid());

    // degenerate point of (z^2, 2z) at the origin
    ValidityReport deg = validity_report(HolPair{parse("z^2"), parse("2*z")}, near0);
    bool found = false;
    for (int iv = 0; iv < near0.nv; ++iv)
        for (int iu = 0; iu < near0.nu; ++iu) {
            if (deg.points[near0.index(iu, iv)] != PointClass::DegeneratePoint) continue;
            if (std::abs(near0.point(iu, iv)) < 1e-12) found = true;
        }
    CHECK(found);

    // pole of the generator is a singular evaluation
    ValidityReport sing = validity_report(HolPair{parse("2+1/z"), parse("3+z")}, near0);
    CHECK(sing.n_singular > 0);

    // triples: f = 0 breaks the metric, g1'g2' = 0 is a degenerate point
    ValidityReport tok = validity_report(HolTriple{parse("1"), parse("z"), parse("2*z")}, grid);
    CHECK(tok.all_valid());
    ValidityReport tf0 = validity_report(HolTriple{parse("z"), parse("2+z"), parse("3+z")}, near0);
    CHECK(tf0.n_metric_degenerate > 0);
    ValidityReport tdeg = validity_report(HolTriple{parse("1"), parse("z^2"), parse("0.5*z")}, near0);
    CHECK(tdeg.n_degenerate > 0);
}

TEST_CASE("degenerate_points") {
    GridSpec grid = GridSpec::make(-1.5, 1.5, -1.5, 1.5, 31, 31);
    CHECK(degenerate_points(HolPair{parse("z"), parse("2*z")}, grid).empty());

    std::vector<Complex> zs = degenerate_points(HolPair{parse("z^2"), parse("2*z")}, grid);
    REQUIRE(zs.size() == 1);
    CHECK(std::abs(zs[0]) < 1e-9);

    std::vector<Complex> pm = degenerate_points(HolPair{parse("(z-1)^2"), parse("(z+1)^2")}, grid);
    REQUIRE(pm.size() == 2);
    CHECK(std::abs(pm[0] - Complex(-1, 0)) < 1e-9);
    CHECK(std::abs(pm[1] - Complex(1, 0)) < 1e-9);

    // multiplicity-four zero: slow Newton hands over to the diagonal search
    std::vector<Complex> quad = degenerate_points(HolPair{parse("0.2*z^5"), parse("0.5*z")}, grid);
    REQUIRE(quad.size() == 1);
    CHECK(std::abs(quad[0]) < 1e-8);
}

TEST_CASE("canonical_parameter") {
    // already canonical: unit integrand
    HolTriple can{parse("0.5/sqrt(2)"), parse("z"), parse("2*z")};  // 4 f^2 g1' g2' = 1
    Complex s1 = canonical_parameter(can, Complex(1.5, 0.1), Complex(2.5, 0.6));
    CHECK(std::abs(s1 - Complex(1.0, 0.5)) < 1e-9);

    // constant integrand (4 f^2 g1' g2')^(1/4) = sqrt(2)
    HolTriple lin{parse("1"), parse("z"), parse("z")};
    Complex s2 = canonical_parameter(lin, Complex(2, 0), Complex(3, 1));
    CHECK(std::abs(s2 - M_SQRT2 * Complex(1, 1)) < 1e-9);

    // closed form for (1, z, z^2): integrand (8z)^(1/4)
    HolTriple tr{parse("1"), parse("z"), parse("z^2")};
    Complex s3 = canonical_parameter(tr, Complex(1, 0), Complex(4, 0));
    double expect = std::pow(8.0, 0.25) * 0.8 * (std::pow(4.0, 1.25) - 1.0);
    CHECK(std::abs(s3 - Complex(expect, 0)) < 1e-8);

    // start point normalization and additivity along the segment
    CHECK(canonical_parameter(tr, Complex(2, 0), Complex(2, 0)) == Complex(0, 0));
    Complex mid = canonical_parameter(tr, Complex(1, 0), Complex(2.5, 0));
    Complex rest = canonical_parameter(tr, Complex(2.5, 0), Complex(4, 0));
    CHECK(std::abs(mid + rest - s3) < 1e-9);

    // degenerate point on the path is rejected
    HolTriple bad{parse("1"), parse("z^2"), parse("z")};
    CHECK_THROWS_AS(canonical_parameter(bad, Complex(-1, 0), Complex(1, 0)), DomainError);
}

TEST_CASE("canonical parameter tracks the root branch across the cut") {
    // g1' g2' = 3 z^2 crosses the negative real axis along this segment
    HolTriple tr{parse("1"), parse("z"), parse("z^3")};
    Complex a = 1.2 * std::polar(1.0, 0.8);
    Complex b = 1.2 * std::polar(1.0, 2.4);
    Complex got = canonical_parameter(tr, a, b);

    // dense reference with manual nearest-root chaining
    HolExpr q = HolExpr::constant(4.0) * parse("3*z^2");
    const int n = 200000;
    Complex acc = 0.0;
    Complex prev = std::pow(q(a), 0.25);
    Complex run = prev;
    for (int k = 0; k < n; ++k) {
        Complex t0 = a + (b - a) * (double(k) / n);
        Complex t1 = a + (b - a) * (double(k + 1) / n);
        auto track = [&](Complex t) {
            Complex p = std::pow(q(t), 0.25);
            Complex best = p;
            double bd = std::abs(p - run);
            for (int j = 1; j < 4; ++j) {
                p *= Complex(0, 1);
                double d = std::abs(p - run);
                if (d < bd) {
                    bd = d;
                    best = p;
                }
            }
            run = best;
            return best;
        };
        Complex f0 = run;
        Complex fm = track(0.5 * (t0 + t1));
        Complex f1 = track(t1);
        acc += (f0 + 4.0 * fm + f1) / 6.0 * (t1 - t0);
    }
    // the reference itself carries O(step) error at the cut crossing;
    // an untracked branch would be off by O(1)
    CHECK(std::abs(got - acc) < 1e-4);
}

TEST_CASE("phi_r31") {
    std::array<Complex, 3> phi = phi_r31(parse("2*z"), Complex(1, 0));
    CHECK(std::abs(phi[0] - Complex(1.25, 0)) < 1e-15);
    CHECK(std::abs(phi[1] - Complex(0, 0.75)) < 1e-15);
    CHECK(std::abs(phi[2] - Complex(1, 0)) < 1e-15);

    std::mt19937 rng(44);
    std::uniform_real_distribution<double> d(1.2, 2.2);
    for (int k = 0; k < 20; ++k) {
        Complex t(d(rng), d(rng) - 1.2);
        std::array<Complex, 3> f = phi_r31(parse("2*z"), t);
        Complex iso = f[0] * f[0] + f[1] * f[1] - f[2] * f[2];
        CHECK(std::abs(iso) < 1e-12);
    }

    // embedding with g1 = g2 = g: fourth slot vanishes, first three agree up
    // to the shared square-root branch
    HolPair emb{parse("2*z"), parse("2*z")};
    Complex t(1.1, 0.4);
    QuadC q = phi_canonical(emb, t);
    std::array<Complex, 3> r = phi_r31(parse("2*z"), t);
    CHECK(std::abs(q[3]) < 1e-15);
    double plus = 0, minus = 0;
    for (int k = 0; k < 3; ++k) {
        plus = std::max(plus, std::abs(q[k] - r[k]));
        minus = std::max(minus, std::abs(q[k] + r[k]));
    }
    CHECK(std::min(plus, minus) < 1e-13);

    CHECK_THROWS_AS(phi_r31(parse("z^2"), Complex(0, 0)), DomainError);
}

TEST_CASE("phi_grid for a triple matches the pointwise map") {
    HolTriple tr{parse("exp(z)"), parse("2+z"), parse("3+z")};
    GridSpec grid = GridSpec::make(-0.5, 0.5, -0.5, 0.5, 9, 9);
    PhiGrid pg = phi_grid(tr, grid);
    for (int iv = 0; iv < grid.nv; ++iv)
        for (int iu = 0; iu < grid.nu; ++iu) {
            REQUIRE(pg.mask[grid.index(iu, iv)]);
            QuadC want = phi_general(tr, grid.point(iu, iv));
            CHECK((pg.phi.at(iu, iv) - want).max_abs() < 1e-14);
        }
}

TEST_CASE("phi_grid keeps the branch continuous") {
    // radicand 3 z^2 wraps around the cut inside this annulus section
    GridSpec grid = GridSpec::make(-1.8, 1.8, 0.6, 1.8, 25, 9);
    HolPair p{parse("z"), parse("z^3")};
    PhiGrid pg = phi_grid(p, grid);
    int n_checked = 0;
    for (int iv = 0; iv < grid.nv; ++iv)
        for (int iu = 0; iu + 1 < grid.nu; ++iu) {
            if (!pg.mask[grid.index(iu, iv)] || !pg.mask[grid.index(iu + 1, iv)]) continue;
            QuadC d = pg.phi.at(iu + 1, iv) - pg.phi.at(iu, iv);
            // a sign flip would produce a jump of size ~2|phi|
            CHECK(d.max_abs() < 0.8 * pg.phi.at(iu, iv).max_abs() + 0.5);
            ++n_checked;
        }
    CHECK(n_checked > 100);
}
