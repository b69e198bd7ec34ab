#pragma once

#include <array>
#include <vector>

#include "maxsurf/gridfield.hpp"
#include "maxsurf/holfun.hpp"
#include "maxsurf/neutralgeo.hpp"

namespace maxsurf {

enum class CanonicalType { First, Second };

// Generating pair (g1, g2) of the canonical representation.  The shared
// square root sqrt(g1' g2') is taken with the principal branch; branch_sign
// selects between the two congruent surfaces it produces.
struct HolPair {
    HolExpr g1, g2;
    int branch_sign = 1;
    CanonicalType type = CanonicalType::First;
};

// Generating triple (f, g1, g2) of the general representation.
struct HolTriple {
    HolExpr f, g1, g2;
};

// Generator values at one point; lets pairs that exist only as evaluation
// closures (anti-holomorphic parameter changes) reuse the pointwise formulas.
struct GenValues {
    Complex g1, dg1, g2, dg2;
};

QuadC phi_general(const HolTriple& tr, Complex t);
QuadC phi_canonical(const HolPair& p, Complex t);

// Φ of a canonical pair with its four components, and their exact
// derivatives, kept as expression trees.
class CanonicalPhi {
public:
    explicit CanonicalPhi(const HolPair& p);

    QuadC phi(Complex t) const;
    QuadC dphi(Complex t) const;

    // the radicand g1'·g2' (negated for the second type)
    Complex radicand(Complex t) const { return w_(t); }

private:
    std::array<HolExpr, 4> comp_, dcomp_;
    HolExpr w_;
    int branch_sign_;
};

class GeneralPhi {
public:
    explicit GeneralPhi(const HolTriple& tr);

    QuadC phi(Complex t) const;
    QuadC dphi(Complex t) const;

private:
    std::array<HolExpr, 4> comp_, dcomp_;
};

struct RecoveredGenerators {
    Complex f, g1, g2;
};

// Inverse of phi_general at one point.  Fails when phi1 + i*phi2 vanishes;
// apply a proper motion first in that case.
RecoveredGenerators recover_generators(const QuadC& phi, double tol = 1e-12);

enum class PointClass : std::uint8_t {
    Valid,
    MetricDegenerate,     // (|g1|^2-1)(|g2|^2-1) <= 0, or f = 0
    DegeneratePoint,      // g1'·g2' below the degeneracy threshold
    SingularEvaluation,   // evaluation failed (pole, branch point, ...)
};

struct ValidityReport {
    GridSpec grid;
    std::vector<PointClass> points;
    int n_valid = 0, n_metric_degenerate = 0, n_degenerate = 0, n_singular = 0;

    bool all_valid() const { return n_valid == grid.size(); }
    Mask valid_mask() const;
};

ValidityReport validity_report(const HolPair& p, const GridSpec& grid, double degen_tol_rel = 1e-9);
ValidityReport validity_report(const HolTriple& tr, const GridSpec& grid, double degen_tol_rel = 1e-9);

// Zeros of g1'·g2' inside the grid rectangle, located cell-wise and refined
// to 1e-10 in position.
std::vector<Complex> degenerate_points(const HolPair& p, const GridSpec& grid, double tol_rel = 1e-9);

// Canonical parameter s(t) = ∫ (4 f² g1' g2')^(1/4) dτ along the straight
// segment from t0, with the branch continued from the principal value at t0.
Complex canonical_parameter(const HolTriple& tr, Complex t0, Complex t, double abs_tol = 1e-10);

// ds/dt of the canonical parameter at t (principal branch).
Complex canonical_parameter_derivative(const HolTriple& tr, Complex t);

// Weierstrass map for maximal surfaces of the Minkowski 3-space:
// Φ = ( (g²+1)/(2g'), i(g²-1)/(2g'), g/g' ).
std::array<Complex, 3> phi_r31(const HolExpr& g, Complex t);

// Branch-consistent Φ and Φ' fields over a grid.  The sign of the shared
// square root is matched continuously walking from the first grid corner.
struct PhiGrid {
    Field<QuadC> phi;
    Field<QuadC> dphi;
    Mask mask;
};
PhiGrid phi_grid(const HolPair& p, const GridSpec& grid);
PhiGrid phi_grid(const HolTriple& tr, const GridSpec& grid);

}  // namespace maxsurf
