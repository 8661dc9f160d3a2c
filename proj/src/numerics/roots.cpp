#include "hob/numerics/roots.hpp"

#include <cmath>
#include <string>

#include "hob/errors.hpp"

namespace hob {

RootResult find_root(const std::function<double(double)>& f, double lo, double hi, double f_tol,
                     int max_evaluations) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    int evaluations = 2;
    if (std::abs(f_lo) <= f_tol) return {lo, f_lo, evaluations};
    if (std::abs(f_hi) <= f_tol) return {hi, f_hi, evaluations};
    if ((f_lo > 0.0) == (f_hi > 0.0))
        throw RootNotBracketed("f(" + std::to_string(lo) + ") and f(" + std::to_string(hi) + ") share a sign");

    // Illinois weights: halve the stale endpoint's value when the same side
    // is kept twice running.
    double w_lo = f_lo, w_hi = f_hi;
    int side = 0;
    while (evaluations < max_evaluations) {
        const double width = hi - lo;
        double x = hi - w_hi * (hi - lo) / (w_hi - w_lo);
        const bool secant_ok = std::isfinite(x) && x > lo + 0.01 * width && x < hi - 0.01 * width;
        if (!secant_ok) x = 0.5 * (lo + hi);
        if (!(x > lo && x < hi)) break;

        const double fx = f(x);
        ++evaluations;
        if (std::abs(fx) <= f_tol) return {x, fx, evaluations};

        if ((fx > 0.0) == (f_lo > 0.0)) {
            lo = x;
            f_lo = w_lo = fx;
            if (side == -1) w_hi *= 0.5;
            side = -1;
        } else {
            hi = x;
            f_hi = w_hi = fx;
            if (side == 1) w_lo *= 0.5;
            side = 1;
        }
        // Guarantee progress: fall back to halving when the secant stalls.
        if (hi - lo > 0.5 * width) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            ++evaluations;
            if (std::abs(fm) <= f_tol) return {mid, fm, evaluations};
            if ((fm > 0.0) == (f_lo > 0.0)) {
                lo = mid;
                f_lo = w_lo = fm;
            } else {
                hi = mid;
                f_hi = w_hi = fm;
            }
            side = 0;
        }
    }
    throw NonConvergent("root not resolved to |f| <= " + std::to_string(f_tol));
}

}  // namespace hob
