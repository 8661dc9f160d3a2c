#pragma once

namespace hob {

/// Standard normal density.
double norm_pdf(double x) noexcept;

/// Standard normal distribution function. Accepts +/-infinity.
double norm_cdf(double x) noexcept;

/// Inverse of norm_cdf on (0, 1); returns -inf/+inf at 0/1.
double norm_inv(double p);

}  // namespace hob
