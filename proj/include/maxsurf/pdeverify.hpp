#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxsurf/invariants.hpp"

namespace maxsurf {

struct ResidualReport {
    std::string equation_id;
    double h = 0;
    double max_abs = 0;
    double rms = 0;
    int points = 0;
    std::optional<double> order_estimate;
};

// 5-point Laplacian (f_E + f_W + f_N + f_S - 4 f_C)/h^2; out_mask keeps the
// points whose full stencil lies inside mask.
Field<double> laplacian_fd(const Field<double>& f, const Mask& mask, Mask* out_mask);

// Each residual routine can also hand back the per-point residual field(s),
// with NaN outside the evaluated set, for convergence studies.

// Natural system for (K, kappa):
//   q Δ ln q - 2K  and  q Δ ln sqrt((K+kappa)/(K-kappa)) - 2 kappa,
// q = (K²-kappa²)^(1/4), plus the equivalent ±-split form
//   Δ ln(K±kappa)/E - 2(2K±kappa).
std::vector<ResidualReport> residual_natural_K_kappa(const InvariantField& inv,
                                                     std::vector<Field<double>>* fields = nullptr);

// Natural system for (nu, mu):
//   S Δ ln S - 2nu² - 2mu²  and  S Δ ln((nu+mu)/(nu-mu)) - 4 nu mu,
// S = sqrt(nu²-mu²).
std::vector<ResidualReport> residual_natural_nu_mu(const InvariantField& inv,
                                                   std::vector<Field<double>>* fields = nullptr);

// Δ ln E / E + 2K
ResidualReport residual_gauss(const InvariantField& inv, Field<double>* field = nullptr);

// Im dβ/dt̄ + E nu mu / 2
ResidualReport residual_ricci(const InvariantField& inv, Field<double>* field = nullptr);

// Δ ln nu - 2 nu (3-space natural equation)
ResidualReport residual_r31(const Field<double>& nu, const Mask& mask,
                            Field<double>* field = nullptr);

// Complex frame system: dΦ/dt̄ = 0, dΦ/dt = (ln E)_t Φ - Eν n1 + iEμ n2,
// dn1/dt = -(ν/2) Φ̄ + β n2, dn2/dt = i(μ/2) Φ̄ - β n1.
struct FrenetReport {
    std::vector<ResidualReport> equations;   // dphi_dtbar, dphi_dt, dn1_dt, dn2_dt
    std::vector<Field<double>> fields;       // matching per-point residuals
    bool mu_zero_branch = false;             // n2 taken from the oriented completion
};
FrenetReport frenet_residual(const HolPair& p, const GridSpec& grid);

// gamma1 = -E_v/(2E sqrt E), gamma2 = E_u/(2E sqrt E); max_abs/rms report the
// field magnitudes, points with non-finite values drop out of the mask.
std::vector<ResidualReport> geodesic_curvature_check(const InvariantField& inv,
                                                     std::vector<Field<double>>* fields = nullptr);

// Max-abs ratio coarse/fine over the points interior to both runs; fine must
// live on the nested refinement of the coarse grid (NaN marks invalid cells).
double shared_interior_ratio(const Field<double>& coarse, const Field<double>& fine);

double order_estimate(double coarse_max, double fine_max);

std::string residual_reports_json(const std::vector<ResidualReport>& reports);

}  // namespace maxsurf
