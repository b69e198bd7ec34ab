#include <random>

#include "doctest.h"
#include "maxsurf/holfun.hpp"

using namespace maxsurf;

namespace {

Complex fd_derivative(const HolExpr& e, Complex t, double h = 1e-5) {
    return (e(t + h) - e(t - h)) / (2.0 * h);
}

// random expression trees over the full node vocabulary, kept away from
// singularities by shifting the arguments of log, sqrt and division
HolExpr random_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 10);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    switch (pick(rng)) {
        case 0: return HolExpr::constant(Complex(coef(rng), coef(rng)));
        case 1:
        case 2: return HolExpr::variable();
        case 3: return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
        case 4: return random_expr(rng, depth - 1) - random_expr(rng, depth - 1);
        case 5: return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
        case 6:
            return random_expr(rng, depth - 1) /
                   (HolExpr::constant(3.0) + HolExpr::constant(0.25) * random_expr(rng, depth - 1));
        case 7: return pow(random_expr(rng, depth - 1), std::uniform_int_distribution<int>(0, 3)(rng));
        case 8: {
            int f = std::uniform_int_distribution<int>(0, 3)(rng);
            HolExpr u = random_expr(rng, depth - 1);
            if (f == 0) return sin(u);
            if (f == 1) return cos(u);
            if (f == 2) return sinh(u);
            return cosh(u);
        }
        case 9: return exp(HolExpr::constant(0.5) * random_expr(rng, depth - 1));
        default: {
            HolExpr shifted =
                HolExpr::constant(3.0) + HolExpr::constant(0.25) * random_expr(rng, depth - 1);
            return std::uniform_int_distribution<int>(0, 1)(rng) ? sqrt(shifted) : log(shifted);
        }
    }
}

}  // namespace

TEST_CASE("parse produces the documented trees") {
    CHECK(parse("z^2 + 1")(Complex(3, 0)) == Complex(10, 0));
    CHECK(parse("2*exp(z)")(Complex(0, 0)) == Complex(2, 0));

    // precedence: ^ binds tighter than unary minus, * tighter than +
    CHECK(parse("-z^2")(Complex(2, 0)) == Complex(-4, 0));
    CHECK(parse("1+2*3")(Complex(0, 0)) == Complex(7, 0));
    CHECK(parse("2-1-1")(Complex(0, 0)) == Complex(0, 0));
    CHECK(parse("8/4/2")(Complex(0, 0)) == Complex(1, 0));
    CHECK(parse("2.5i")(0.0) == Complex(0.0, 2.5));
    CHECK(parse("i")(0.0) == Complex(0.0, 1.0));
    CHECK(parse("z^-1")(Complex(4, 0)) == Complex(0.25, 0));
}

TEST_CASE("parse rejects bad input with byte offsets") {
    CHECK_THROWS_AS(parse("z^(1/2)"), ParseError);
    CHECK_THROWS_AS(parse("z^1.5"), ParseError);
    CHECK_THROWS_AS(parse("tan(z)"), ParseError);
    CHECK_THROWS_AS(parse("2*"), ParseError);
    CHECK_THROWS_AS(parse("(z"), ParseError);
    CHECK_THROWS_AS(parse("z 2"), ParseError);

    try {
        parse("1 + tan(z)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
    }
}

TEST_CASE("differentiate follows the standard rules") {
    HolExpr d1 = differentiate(parse("z^2 + 1"));
    CHECK(std::abs(d1(Complex(3, 1)) - Complex(6, 2)) < 1e-15);

    HolExpr d2 = differentiate(parse("exp(2*z)"));
    Complex t(0.3, -0.2);
    CHECK(std::abs(d2(t) - 2.0 * std::exp(2.0 * t)) < 1e-14);

    CHECK(differentiate(parse("3"))(Complex(5, 5)) == Complex(0, 0));

    HolExpr ds = differentiate(parse("sqrt(z)"));
    CHECK(std::abs(ds(Complex(4, 0)) - Complex(0.25, 0)) < 1e-15);

    HolExpr dl = differentiate(parse("log(z)"));
    CHECK(std::abs(dl(Complex(2, 0)) - Complex(0.5, 0)) < 1e-15);
}

TEST_CASE("evaluate uses principal branches and flags singularities") {
    CHECK(std::abs(parse("z^2 + 1")(Complex(0, 1))) == 0.0);
    CHECK(parse("exp(z)")(Complex(0, 0)) == Complex(1, 0));

    // principal square root: cut along the negative real axis
    CHECK(std::abs(parse("sqrt(z)")(Complex(-1, 0)) - Complex(0, 1)) < 1e-15);
    CHECK(std::abs(parse("log(z)")(Complex(-1, 1e-30)).imag() - M_PI) < 1e-12);

    CHECK_THROWS_AS(parse("1/z")(Complex(0, 0)), EvalError);
    CHECK_THROWS_AS(parse("log(z)")(Complex(0, 0)), EvalError);
    CHECK_THROWS_AS(parse("exp(z^2)")(Complex(1e200, 0)), EvalError);
}

TEST_CASE("symbolic derivative of z^3 matches the finite difference") {
    HolExpr e = parse("z^3");
    Complex t(2, 0);
    Complex fd = fd_derivative(e, t);
    CHECK(std::abs(differentiate(e)(t) - fd) <= 1e-8 * (1.0 + std::abs(fd)));
}

TEST_CASE("derivatives of random trees agree with central differences") {
    std::mt19937 rng(20240811);
    int accepted = 0;
    while (accepted < 100) {
        HolExpr e = random_expr(rng, 4);
        HolExpr de = differentiate(e);
        std::uniform_real_distribution<double> dp(-0.8, 0.8);
        Complex t(dp(rng), dp(rng));
        Complex fd, sym;
        try {
            fd = fd_derivative(e, t);
            sym = de(t);
        } catch (const EvalError&) {
            continue;
        }
        if (std::abs(fd) > 1e4 || std::abs(e(t)) > 1e4) continue;
        ++accepted;
        CHECK(std::abs(sym - fd) <= 1e-6 * (1.0 + std::abs(fd)));
    }
}

TEST_CASE("printing reparses to an evaluation-equivalent tree") {
    std::mt19937 rng(987654);
    std::uniform_real_distribution<double> dp(-0.8, 0.8);
    for (int k = 0; k < 60; ++k) {
        HolExpr e = random_expr(rng, 4);
        HolExpr back = parse(e.str());
        for (int j = 0; j < 4; ++j) {
            Complex t(dp(rng), dp(rng));
            Complex a, b;
            try {
                a = e(t);
                b = back(t);
            } catch (const EvalError&) {
                continue;
            }
            CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
        }
    }

    // derivative trees print and reparse as well
    HolExpr e = parse("sqrt(3+z^2)*exp(2*z)-1/(2+cos(z))");
    HolExpr de = differentiate(e);
    HolExpr back = parse(de.str());
    Complex t(0.37, -0.21);
    CHECK(std::abs(de(t) - back(t)) < 1e-13);
}

TEST_CASE("compose substitutes the variable") {
    HolExpr g = parse("z^2+1");
    HolExpr inner = parse("2*z");
    HolExpr c = g.compose(inner);
    CHECK(c(Complex(3, 0)) == Complex(37, 0));
    // chain rule through the composed tree
    CHECK(std::abs(differentiate(c)(Complex(3, 0)) - Complex(24, 0)) < 1e-13);
}
