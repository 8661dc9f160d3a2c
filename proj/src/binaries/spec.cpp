#include "hob/binaries/spec.hpp"

#include <cmath>
#include <string>

#include "hob/errors.hpp"

namespace hob {

void MarketParams::validate() const {
    if (!std::isfinite(r)) throw ValidationError("r must be finite", "r");
    if (!std::isfinite(q)) throw ValidationError("q must be finite", "q");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("sigma must be positive and finite", "sigma");
}

void BinarySpec::validate() const {
    const std::size_t n = expiries.size();
    if (n == 0) throw DimensionMismatch("a binary needs at least one expiry", "expiries");
    if (signs.size() != n) throw DimensionMismatch("signs and expiries differ in length", "signs");
    if (exercise_prices.size() != n)
        throw DimensionMismatch("exercise_prices and expiries differ in length", "exercise_prices");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(expiries[i])) throw ValidationError("expiries must be finite", "expiries");
        if (!(exercise_prices[i] > 0.0) || !std::isfinite(exercise_prices[i]))
            throw ValidationError("exercise price " + std::to_string(i) + " must be positive", "exercise_prices");
        if (i > 0 && !(expiries[i] - expiries[i - 1] >= kMinExpiryGap))
            throw NonIncreasingExpiries("expiries must increase strictly", "expiries");
    }
    if (kind.type == BinaryKind::Type::Q && (!(kind.strike > 0.0) || !std::isfinite(kind.strike)))
        throw ValidationError("strike must be positive", "strike");
}

}  // namespace hob
