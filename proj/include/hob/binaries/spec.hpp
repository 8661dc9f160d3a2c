#pragma once

#include <cstddef>
#include <vector>

namespace hob {

/// Constant Black-Scholes coefficients, annualised.
struct MarketParams {
    double r = 0.0;
    double q = 0.0;
    double sigma = 0.0;

    /// Throws ValidationError naming "sigma", "r" or "q".
    void validate() const;
    friend bool operator==(const MarketParams&, const MarketParams&) = default;
};

enum class Sign : int { Up = 1, Down = -1 };

inline constexpr double sign_value(Sign s) noexcept { return static_cast<double>(static_cast<int>(s)); }
inline constexpr Sign flip(Sign s) noexcept { return s == Sign::Up ? Sign::Down : Sign::Up; }

/// What the binary delivers at its last date: one share, one unit of cash,
/// or s * (x - K) for a Q-binary.
struct BinaryKind {
    enum class Type { Asset, Bond, Q };

    Type type = Type::Asset;
    double strike = 0.0;  ///< only meaningful for Q

    static BinaryKind asset() { return {Type::Asset, 0.0}; }
    static BinaryKind bond() { return {Type::Bond, 0.0}; }
    static BinaryKind q(double strike) { return {Type::Q, strike}; }

    friend bool operator==(const BinaryKind&, const BinaryKind&) = default;
};

/// Smallest admissible gap between consecutive expiries, in years.
inline constexpr double kMinExpiryGap = 1e-9;

/// An n-th order binary: indicator 1(s_i x(T_i) > s_i xi_i) at every date,
/// payoff of `kind` at the last one.
struct BinarySpec {
    BinaryKind kind;
    std::vector<Sign> signs;
    std::vector<double> exercise_prices;
    std::vector<double> expiries;

    std::size_t order() const noexcept { return expiries.size(); }

    /// DimensionMismatch for unequal lengths or n = 0, NonIncreasingExpiries
    /// when a gap is below kMinExpiryGap, ValidationError for nonpositive or
    /// non-finite prices and strikes.
    void validate() const;

    friend bool operator==(const BinarySpec&, const BinarySpec&) = default;
};

}  // namespace hob
