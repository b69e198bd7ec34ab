#pragma once

#include <string>
#include <variant>

#include "maxsurf/gridfield.hpp"
#include "maxsurf/weierstrass.hpp"

namespace maxsurf {

using PhiSource = std::variant<HolPair, HolTriple>;

// Grid of points of one member of the associated family, together with the
// holomorphic data it was built from.  x = Re(e^{-i theta} Psi) exactly, and
// Psi(t0) = 0.
struct SurfacePatch {
    GridSpec grid;
    Complex t0{};
    double theta = 0;
    std::vector<Vec4> x;
    std::vector<QuadC> psi;
    std::vector<QuadC> phi;  // branch-consistent with psi
    std::string provenance;
    int branch_sign = 1;
};

// Primitive Psi of Phi with Psi(t0) = 0, integrated along L-shaped paths
// t0 -> (Re t, Im t0) -> t.  Path independence is spot checked against the
// other L-path order within 1e-9.
Field<QuadC> integrate_psi(const PhiSource& src, const GridSpec& grid, Complex t0,
                           double abs_tol = 1e-10);

SurfacePatch build_patch(const PhiSource& src, const GridSpec& grid, Complex t0, double theta);

struct PatchVerification {
    double max_xu_error = 0;       // finite differences of x vs Re(e^{-i theta} Phi)
    double max_xv_error = 0;       // ... vs -Im(e^{-i theta} Phi)
    double max_isothermal_F = 0;   // x_u · x_v
    double max_isothermal_EG = 0;  // x_u^2 - x_v^2
    double max_harmonic = 0;       // 5-point Laplacian of x
    double max_E_fd_error = 0;     // E from finite differences vs E = ||Phi||^2/2
    double max_E_theta_error = 0;  // E of this patch vs the theta = 0 patch
};
PatchVerification verify_patch(const SurfacePatch& patch, const PhiSource& src);

enum class PatchFormat { Csv4d, Json };

// csv4d: header u,v,x1,x2,x3,x4 with 17-significant-digit reals, v-major rows.
// json: {grid, t0, theta, points, provenance}.
std::string export_patch(const SurfacePatch& patch, PatchFormat format);

// parse-back of the csv4d format (round-trip testing and downstream import)
struct ImportedPatch {
    std::vector<double> u, v;
    std::vector<Vec4> x;
};
ImportedPatch import_patch_csv(const std::string& text);

}  // namespace maxsurf
