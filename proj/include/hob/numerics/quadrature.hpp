#pragma once

#include <functional>
#include <span>

namespace hob {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  ///< estimated absolute error
    int evaluations = 0;
    bool converged = false;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15-point Gauss-Kronrod integration of f over [a, b].
/// Either limit may be infinite. Stops when the summed error estimate is at
/// most max(abs_tol, rel_tol * |value|) or after `max_intervals` subintervals;
/// the result reports which.
QuadratureResult integrate(const Integrand& f, double a, double b, double abs_tol,
                           double rel_tol = 0.0, int max_intervals = 4000);

/// Integral of f over (0, inf), computed in log-space (z = e^u) and split at
/// `breakpoints` (positive; kinks and jumps of f belong here, as does the
/// location of any narrow peak). Throws NonConvergent when the reported
/// error bound exceeds `accuracy`.
QuadratureResult gauss_quadrature(const Integrand& f, double accuracy,
                                  std::span<const double> breakpoints = {});

}  // namespace hob
