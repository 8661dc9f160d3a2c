#include "hob/numerics/normal.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "hob/errors.hpp"

namespace hob {

double norm_pdf(double x) noexcept {
    constexpr double inv_sqrt_2pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double norm_cdf(double x) noexcept {
    // erfc keeps full relative accuracy in the lower tail.
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double norm_inv(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError("norm_inv: probability outside [0, 1]", "p");
    }
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

}  // namespace hob
