#include "maxsurf/gridfield.hpp"

#include <cmath>

namespace maxsurf {

GridSpec GridSpec::make(double u0, double u1, double v0, double v1, int nu, int nv) {
    if (nu < 5 || nv < 5) throw DomainError("grid needs at least 5 points per direction");
    if (!(u1 > u0) || !(v1 > v0)) throw DomainError("grid bounds must be increasing");
    double hu = (u1 - u0) / (nu - 1);
    double hv = (v1 - v0) / (nv - 1);
    if (std::abs(hu - hv) > 1e-12 * std::max(std::abs(hu), std::abs(hv))) {
        throw DomainError("grid cells must be square: (u1-u0)/(nu-1) == (v1-v0)/(nv-1)");
    }
    GridSpec g;
    g.u0 = u0;
    g.u1 = u1;
    g.v0 = v0;
    g.v1 = v1;
    g.nu = nu;
    g.nv = nv;
    g.h = hu;
    return g;
}

GridSpec GridSpec::refined() const {
    return make(u0, u1, v0, v1, 2 * nu - 1, 2 * nv - 1);
}

}  // namespace maxsurf
