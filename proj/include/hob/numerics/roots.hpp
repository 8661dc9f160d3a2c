#pragma once

#include <functional>

namespace hob {

struct RootResult {
    double root = 0.0;
    double residual = 0.0;  ///< f(root)
    int evaluations = 0;
};

/// Root of f on [lo, hi] by bisection with a secant (Illinois) step taken
/// whenever it lands inside the bracket and shrinks it at least by half.
/// Stops once |f| <= f_tol. Throws RootNotBracketed if f(lo) and f(hi) share
/// a sign, NonConvergent if the bracket collapses or `max_evaluations` runs
/// out first.
RootResult find_root(const std::function<double(double)>& f, double lo, double hi, double f_tol,
                     int max_evaluations = 200);

}  // namespace hob
