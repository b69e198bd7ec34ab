#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "maxsurf/invariants.hpp"
#include "maxsurf/weierstrass.hpp"

namespace maxsurf {

// Parameters of the linear fractional map g -> (a g + conj(b))/(b g + conj(a)).
// sign = |a|^2 - |b|^2 must be +1 or -1; +1 preserves the two sides of the
// unit circle, -1 exchanges them.
struct MoebiusParams {
    Complex a, b;
    int sign;

    MoebiusParams(Complex a_, Complex b_, double tol = 1e-12);
    static MoebiusParams identity() { return {1.0, 0.0}; }
};

// Motion acting on generating pairs: one Moebius factor per generator, with
// an optional exchange of the generators (the improper motions).
struct MotionSpec {
    MoebiusParams m1, m2;
    bool swap_generators = false;

    bool proper() const { return !swap_generators; }
    bool orthochronous() const { return (m1.sign == 1) != swap_generators; }
};

HolExpr moebius_apply(const MoebiusParams& m, const HolExpr& g);

HolPair motion_transform_pair(const MotionSpec& ms, const HolPair& p);

// Generator that exists only as evaluation closures (value and derivative);
// produced by anti-holomorphic parameter changes.
struct EvalGen {
    std::function<Complex(Complex)> value;
    std::function<Complex(Complex)> deriv;
};
struct EvalPair {
    EvalGen g1, g2;
    int branch_sign = 1;
    CanonicalType type = CanonicalType::First;
};

InvariantSample canonical_invariants(const EvalPair& p, Complex s);

using ChangedPair = std::variant<HolPair, EvalPair>;

// Canonical parameter change t = delta*s + c (holomorphic case) or
// t = delta*conj(s) + c (anti-holomorphic case); delta must be one of ±1, ±i.
ChangedPair coordinate_change_pair(const HolPair& p, Complex delta, Complex c, bool antiholo);

// g_j(s) -> g_j(s/sqrt(k)); invariants scale as K,kappa ~ 1/k², nu,mu ~ 1/k, E ~ k
HolPair homothety_pair(const HolPair& p, double k);

// g_j(s) -> g_j(e^{i theta/2} s); theta = pi/2 gives the conjugate surface
HolPair associated_pair(const HolPair& p, double theta);

struct HyperplaneResult {
    bool in_hyperplane = false;
    std::optional<MoebiusParams> moebius;
    double max_abs_kappa = 0;
    double fit_residual = 0;
};

// A pair lies in a hyperplane iff kappa vanishes; the relating Moebius map is
// fitted from three sample points and verified on the whole masked grid.
HyperplaneResult hyperplane_test(const HolPair& p, const GridSpec& grid, double tol);

// When the two (K, kappa) fields coincide within tol (relative to the field
// RMS), returns the Moebius parameters relating the generators, determined up
// to simultaneous negation.  Returns nothing when the fields differ.
std::optional<std::pair<MoebiusParams, MoebiusParams>> equivalence_test(const HolPair& pa,
                                                                        const HolPair& pb,
                                                                        const GridSpec& grid,
                                                                        double tol = 1e-8);

}  // namespace maxsurf
