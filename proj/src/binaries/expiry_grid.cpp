#include "hob/binaries/expiry_grid.hpp"

#include <cmath>

#include "hob/errors.hpp"

namespace hob {

void check_expiry_grid(double t, std::span<const double> expiries) {
    if (expiries.empty()) throw DimensionMismatch("empty expiry grid", "expiries");
    if (!std::isfinite(t)) throw ValidationError("valuation time must be finite", "time");
    if (!(t < expiries[0])) throw TimeAfterFirstExpiry("valuation time is not before the first expiry", "time");
    for (std::size_t i = 1; i < expiries.size(); ++i)
        if (!(expiries[i] - expiries[i - 1] >= kMinExpiryGap))
            throw NonIncreasingExpiries("expiries must increase strictly", "expiries");
}

PrecisionMatrix::PrecisionMatrix(double t, std::span<const double> expiries)
    : t_(t), expiries_(expiries.begin(), expiries.end()), entries_(expiries.size()) {
    check_expiry_grid(t, expiries);
    const std::size_t n = expiries.size();
    // With T_{-1} = t the first row follows the same pattern as the others.
    auto tau = [&](std::size_t i) { return expiries[i] - t; };
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i == 0 ? t : expiries[i - 1];
        double a = tau(i) / (expiries[i] - left);
        if (i + 1 < n) {
            const double gap = expiries[i + 1] - expiries[i];
            a += tau(i) / gap;
            const double off = -std::sqrt(tau(i) * tau(i + 1)) / gap;
            entries_(i, i + 1) = off;
            entries_(i + 1, i) = off;
        }
        entries_(i, i) = a;
    }
}

Matrix PrecisionMatrix::signed_entries(std::span<const Sign> signs) const {
    if (signs.size() != dim()) throw DimensionMismatch("one sign per expiry", "signs");
    Matrix m = entries_;
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) m(i, j) *= sign_value(signs[i]) * sign_value(signs[j]);
    return m;
}

double PrecisionMatrix::determinant() const {
    // Continuant recurrence: D_k = a_kk D_{k-1} - a_{k-1,k}^2 D_{k-2}.
    double prev = 1.0;
    double cur = entries_(0, 0);
    for (std::size_t k = 1; k < dim(); ++k) {
        const double next = entries_(k, k) * cur - entries_(k - 1, k) * entries_(k - 1, k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double PrecisionMatrix::product_determinant() const {
    double det = 1.0;
    double previous = t_;
    for (double T : expiries_) {
        det *= (T - t_) / (T - previous);
        previous = T;
    }
    return det;
}

CorrelationMatrix correlation_from_expiries(double t, std::span<const double> expiries,
                                            std::span<const Sign> signs) {
    check_expiry_grid(t, expiries);
    const std::size_t n = expiries.size();
    if (signs.size() != n) throw DimensionMismatch("one sign per expiry", "signs");
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double rho = sign_value(signs[i]) * sign_value(signs[j]) *
                               std::sqrt((expiries[i] - t) / (expiries[j] - t));
            m(i, j) = rho;
            m(j, i) = rho;
        }
    }
    return CorrelationMatrix(std::move(m));
}

}  // namespace hob
