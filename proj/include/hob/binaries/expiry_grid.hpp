#pragma once

#include <span>

#include "hob/binaries/spec.hpp"
#include "hob/numerics/matrix.hpp"

namespace hob {

/// Tridiagonal precision matrix of the Brownian values at T_0..T_{n-1}
/// seen from t, normalised by their standard deviations. Its inverse is the
/// correlation matrix sqrt((T_i - t) / (T_j - t)), i <= j.
class PrecisionMatrix {
public:
    /// Throws TimeAfterFirstExpiry or NonIncreasingExpiries.
    PrecisionMatrix(double t, std::span<const double> expiries);

    std::size_t dim() const noexcept { return entries_.dim(); }
    const Matrix& entries() const noexcept { return entries_; }

    /// Entries s_i * s_j * a_ij.
    Matrix signed_entries(std::span<const Sign> signs) const;

    /// Determinant by the tridiagonal recurrence on the entries.
    double determinant() const;

    /// prod_k (T_k - t) / (T_k - T_{k-1}) with T_{-1} = t.
    double product_determinant() const;

private:
    double t_;
    std::vector<double> expiries_;
    Matrix entries_;
};

/// Entries s_i * s_j * sqrt((T_min(i,j) - t) / (T_max(i,j) - t)).
/// Throws TimeAfterFirstExpiry, NonIncreasingExpiries or DimensionMismatch.
CorrelationMatrix correlation_from_expiries(double t, std::span<const double> expiries,
                                            std::span<const Sign> signs);

/// Shared precondition check: t < T_0 and gaps of at least kMinExpiryGap.
void check_expiry_grid(double t, std::span<const double> expiries);

}  // namespace hob
