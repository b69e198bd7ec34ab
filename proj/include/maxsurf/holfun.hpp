#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "maxsurf/core.hpp"

namespace maxsurf {

// A holomorphic function of one complex variable, stored as an immutable
// expression tree.  Differentiation is purely structural; evaluation uses
// the principal branch for sqrt and log (cut along the negative real axis).
// Instances are cheap to copy and safe to share across threads.
class HolExpr {
public:
    HolExpr();  // the constant 0

    static HolExpr constant(Complex c);
    static HolExpr variable();

    // d/dz, with constant folding only (no further simplification)
    HolExpr derivative() const;

    Complex operator()(Complex t) const;

    // substitution of the variable: (this ∘ inner)(z) = this(inner(z))
    HolExpr compose(const HolExpr& inner) const;

    // printable form that parses back to an evaluation-equivalent tree
    std::string str() const;

    struct Node;

    friend HolExpr operator+(const HolExpr&, const HolExpr&);
    friend HolExpr operator-(const HolExpr&, const HolExpr&);
    friend HolExpr operator-(const HolExpr&);
    friend HolExpr operator*(const HolExpr&, const HolExpr&);
    friend HolExpr operator/(const HolExpr&, const HolExpr&);
    friend HolExpr pow(const HolExpr&, int);
    friend HolExpr exp(const HolExpr&);
    friend HolExpr log(const HolExpr&);
    friend HolExpr sin(const HolExpr&);
    friend HolExpr cos(const HolExpr&);
    friend HolExpr sinh(const HolExpr&);
    friend HolExpr cosh(const HolExpr&);
    friend HolExpr sqrt(const HolExpr&);
    friend HolExpr parse(std::string_view src);

private:
    explicit HolExpr(std::shared_ptr<const Node> n);
    std::shared_ptr<const Node> node_;
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('-')? power
//   power  := atom ('^' integer)?
//   atom   := number | 'i' | 'z' | ident '(' expr ')' | '(' expr ')'
//   number := decimal literal, optionally suffixed by 'i'
//   ident  := exp | log | sin | cos | sinh | cosh | sqrt
HolExpr parse(std::string_view src);

HolExpr differentiate(const HolExpr& e);
Complex evaluate(const HolExpr& e, Complex t);

}  // namespace maxsurf
