#pragma once

#include <cmath>
#include <utility>

#include "maxsurf/core.hpp"
#include "maxsurf/neutralgeo.hpp"

namespace maxsurf::detail {

inline double norm_of(Complex v) { return std::abs(v); }
inline double norm_of(const QuadC& v) { return v.max_abs(); }

// Adaptive Simpson along the straight segment [a, b].
// F maps Complex -> V where V is Complex or QuadC.
template <class V, class F>
V adaptive_simpson(F&& f, Complex a, Complex b, double abstol, int maxdepth = 40) {
    struct Rec {
        F& f;
        Complex a, dir;
        int maxdepth;

        V eval(double s) { return f(a + s * dir) * dir; }

        V go(double s0, double s2, V f0, V f1, V f2, V whole, double tol, int depth) {
            double s1 = 0.5 * (s0 + s2);
            double sl = 0.5 * (s0 + s1), sr = 0.5 * (s1 + s2);
            V fl = eval(sl), fr = eval(sr);
            double hh = s2 - s0;
            V left = (f0 + 4.0 * fl + f1) * (hh / 12.0);
            V right = (f1 + 4.0 * fr + f2) * (hh / 12.0);
            V sum = left + right;
            double err = norm_of(sum - whole) / 15.0;
            if (err <= tol || depth >= maxdepth) {
                if (depth >= maxdepth && err > 16.0 * tol) {
                    throw QuadratureError("quadrature did not reach the requested accuracy");
                }
                return sum + (sum - whole) * (1.0 / 15.0);
            }
            return go(s0, s1, f0, fl, f1, left, 0.5 * tol, depth + 1) +
                   go(s1, s2, f1, fr, f2, right, 0.5 * tol, depth + 1);
        }
    };

    if (a == b) return V{};
    Rec rec{f, a, b - a, maxdepth};
    V f0 = rec.eval(0.0), f1 = rec.eval(0.5), f2 = rec.eval(1.0);
    V whole = (f0 + 4.0 * f1 + f2) * (1.0 / 6.0);
    return rec.go(0.0, 1.0, f0, f1, f2, whole, abstol, 0);
}

// Continuation of a k-th root along a path: keeps the candidate
// rot * principal(t) closest to the previously accepted value.
class RootTracker {
public:
    RootTracker() = default;
    RootTracker(int order, Complex principal_at_seed)
        : order_(order), rot_(1.0), prev_(principal_at_seed) {}

    Complex rot() const { return rot_; }

    // principal value of the root at the next path point
    void advance(Complex principal) {
        const Complex omega = (order_ == 2) ? Complex(-1.0, 0.0) : Complex(0.0, 1.0);
        Complex best_rot = rot_;
        double best_d = std::abs(rot_ * principal - prev_);
        Complex r = rot_;
        for (int k = 1; k < order_; ++k) {
            r *= omega;
            double d = std::abs(r * principal - prev_);
            if (d < best_d) {
                best_d = d;
                best_rot = r;
            }
        }
        rot_ = best_rot;
        prev_ = best_rot * principal;
    }

private:
    int order_ = 2;
    Complex rot_{1.0, 0.0};
    Complex prev_{1.0, 0.0};
};

// Integral of rot(t)*f(t) over the segment [a, b], where f is the
// principal-branch integrand and rot the tracked continuation factor.
// Rotation jumps (branch-cut crossings) are localized by bisection.
template <class V, class PrincRoot, class PrincEval>
V integrate_tracked(PrincRoot&& princ, PrincEval&& f, RootTracker& tr, Complex a, Complex b,
                    double abstol, int depth = 0) {
    Complex mid = 0.5 * (a + b);
    RootTracker t_mid = tr;
    t_mid.advance(princ(mid));
    RootTracker t_end = t_mid;
    t_end.advance(princ(b));
    bool constant_rot = (t_mid.rot() == tr.rot()) && (t_end.rot() == tr.rot());
    if (constant_rot) {
        Complex rot = tr.rot();
        V res = adaptive_simpson<V>([&](Complex t) { return V(rot * f(t)); }, a, b, abstol);
        tr = t_end;
        return res;
    }
    if (depth >= 48) {
        // the rotation jump is localized to a sliver of relative width 2^-48;
        // a trapezoid of the tracked endpoint values is below any tolerance here
        V res = (V(tr.rot() * f(a)) + V(t_end.rot() * f(b))) * (0.5 * (b - a));
        tr = t_end;
        return res;
    }
    V left = integrate_tracked<V>(princ, f, tr, a, mid, 0.5 * abstol, depth + 1);
    V right = integrate_tracked<V>(princ, f, tr, mid, b, 0.5 * abstol, depth + 1);
    return left + right;
}

}  // namespace maxsurf::detail
