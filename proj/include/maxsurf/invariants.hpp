#pragma once

#include <string>
#include <utility>

#include "maxsurf/gridfield.hpp"
#include "maxsurf/weierstrass.hpp"

namespace maxsurf {

// Scalar invariants at one point of a surface in canonical coordinates.
// Satisfies K = nu^2 + mu^2, kappa = 2 nu mu, E = 1/sqrt(nu^2 - mu^2),
// K >= |kappa| and nu > |mu| away from degenerate points.
struct InvariantSample {
    double E = 0, K = 0, kappa = 0, nu = 0, mu = 0;
    Complex t{};
    bool near_degenerate = false;
};

InvariantSample canonical_invariants(const HolPair& p, Complex t);
InvariantSample canonical_invariants(const GenValues& gv, Complex t, double near_degen_rel = 1e-9);

struct GeneralInvariants {
    double E = 0, K = 0, kappa = 0;
};
GeneralInvariants general_invariants(const HolTriple& tr, Complex t);

// Invariants of the canonically reparametrized surface of a triple, at the
// image of t under the canonical parameter change (chain rule route).
InvariantSample canonicalized_invariants(const HolTriple& tr, Complex t);

// (K, kappa) = (nu^2 + mu^2, 2 nu mu); requires nu > |mu| >= 0
std::pair<double, double> curvatures_from_normal(double nu, double mu);

// inverse of the previous map; requires K > |kappa|
std::pair<double, double> normal_from_curvatures(double K, double kappa);

// E = (K^2 - kappa^2)^(-1/4); requires K > |kappa|
double E_from_curvatures(double K, double kappa);

// semi-axes (nu, |mu|) of the ellipse of the normal curvature
std::pair<double, double> ellipse_axes(const HolPair& p, Complex t);

struct R31Invariants {
    double E = 0, nu = 0;
};
R31Invariants r31_invariants(const HolExpr& g, Complex t);

// (K, kappa) of the 4-space surface assembled from two 3-space normal
// curvatures, and its inverse
std::pair<double, double> correspond_to_r42(double nu1, double nu2);
std::pair<double, double> correspond_from_r42(double K, double kappa);

double geometric_mean_E(double E1, double E2);

// Invariants over a grid.  The mask excludes points failing validity; the
// near_degenerate flags mark points where nu - |mu| < 1e-9 * nu (kept in the
// mask but excluded from PDE residual statistics).
struct InvariantField {
    GridSpec grid;
    Field<double> E, K, kappa, nu, mu;
    Mask mask;
    Mask near_degenerate;
};

InvariantField invariant_field(const HolPair& p, const GridSpec& grid, double degen_tol_rel = 1e-9);

// beta = -(i/2) d/dt ln((nu+mu)/(nu-mu)) with d/dt by central differences;
// out_mask marks the points with a full interior stencil.
Field<Complex> beta_field(const InvariantField& inv, Mask* out_mask);

// CSV with header u,v,E,K,kappa,nu,mu,valid; reals carry 17 significant
// digits; rows run v-major (v outer, u inner).
std::string invariant_field_csv(const InvariantField& inv);

}  // namespace maxsurf
