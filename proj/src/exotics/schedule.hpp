#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hob/binaries/spec.hpp"
#include "hob/errors.hpp"

namespace hob::detail {

inline void check_schedule(const std::vector<double>& dates, const std::string& field) {
    if (dates.empty()) throw ValidationError("at least one date is required", field);
    for (std::size_t i = 0; i < dates.size(); ++i) {
        if (!std::isfinite(dates[i])) throw ValidationError("dates must be finite", field);
        if (i > 0 && !(dates[i] - dates[i - 1] >= kMinExpiryGap))
            throw NonIncreasingExpiries("dates must increase strictly", field);
    }
}

inline void check_positive(double v, const std::string& field) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("must be positive and finite", field);
}

/// Number of dates at or before t; the interval [dates[m-1], dates[m]).
inline std::size_t interval_index(const std::vector<double>& dates, double t) {
    if (!std::isfinite(t)) throw ValidationError("valuation time must be finite", "time");
    const auto m = static_cast<std::size_t>(std::upper_bound(dates.begin(), dates.end(), t) - dates.begin());
    if (m >= dates.size()) throw TimeAfterFirstExpiry("valuation time is not before final expiry", "time");
    return m;
}

}  // namespace hob::detail
