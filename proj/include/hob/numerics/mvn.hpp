#pragma once

#include <cstdint>
#include <span>

#include "hob/numerics/matrix.hpp"

namespace hob {

inline constexpr double kDefaultMvnTolerance = 1e-7;

/// P(X < h, Y < k) for a standard bivariate normal with correlation rho,
/// |rho| <= 1. Genz's double-precision Gauss-Legendre scheme; absolute
/// error around 1e-15. Infinite limits are accepted.
double bvn_cdf(double h, double k, double rho);

struct MvnEstimate {
    double value = 0.0;
    double error = 0.0;  ///< estimated absolute error
};

/// P(X_i < upper_i for all i) for X ~ N(0, corr).
///
/// Infinite limits are exact: any -inf gives 0 and +inf coordinates are
/// marginalised out before integration. What remains is dispatched:
/// 1 uses norm_cdf, 2 uses bvn_cdf. Larger systems are first tried by
/// conditioning: pick a pivot coordinate, split the conditional correlation
/// into independent blocks, and integrate the product of block probabilities
/// with adaptive Gauss-Kronrod. When no more than two nested integrals are
/// needed (always at dimension 3 and 4, and for expiry-grid correlations of
/// any size) the result is deterministic and accurate to about 1e-13.
/// Otherwise Genz's separation-of-variables transform is integrated with
/// Sobol points under random digital shifts drawn from a fixed seed.
///
/// Throws DimensionMismatch, or ValidationError for NaN limits / tol <= 0.
MvnEstimate mvn_cdf_estimate(std::span<const double> upper, const CorrelationMatrix& corr,
                             double tol = kDefaultMvnTolerance);

double mvn_cdf(std::span<const double> upper, const CorrelationMatrix& corr,
               double tol = kDefaultMvnTolerance);

namespace detail {

/// The randomized-QMC route, usable at any dimension. Exposed so tests can
/// pit it against the deterministic low-dimensional paths.
MvnEstimate mvn_cdf_qmc(std::span<const double> upper, const CorrelationMatrix& corr, double tol,
                        std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

}  // namespace detail

}  // namespace hob
