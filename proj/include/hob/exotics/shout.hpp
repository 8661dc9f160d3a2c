#pragma once

#include <array>

#include "hob/binaries/spec.hpp"
#include "hob/numerics/mvn.hpp"
#include "hob/replication/portfolio.hpp"

namespace hob {

/// Call on max(x(T_0), x(T_1), x(T_2)) - K, floored at zero: the holder
/// locks in the intrinsic value at both predetermined shout dates.
struct TwiceShoutCall {
    double strike = 0.0;
    std::array<double, 2> shout_dates{};
    double final_expiry = 0.0;

    /// ValidationError naming "strike", "shout_dates" or "final_expiry".
    void validate() const;
    friend bool operator==(const TwiceShoutCall&, const TwiceShoutCall&) = default;
};

/// Value per unit of spot of an at-the-money forward-start call struck at
/// the spot seen at T1 and expiring at T2.
double shout_g(double T1, double T2, const MarketParams& params);

/// Value per unit of spot, seen at T0, of the second-order Q-binary that
/// pays (x(T2) - x(T0))^+ when x(T1) < x(T0).
double shout_g1(double T0, double T1, double T2, const MarketParams& params,
                double mvn_tol = kDefaultMvnTolerance);

/// Coefficient of the asset leg in the value at T0 above the strike.
double shout_G(double T0, double T1, double T2, const MarketParams& params,
               double mvn_tol = kDefaultMvnTolerance);

/// Single shout at T1, expiry T2: payoff max(x(T1), x(T2)) - K floored at
/// zero. Valid for t < T1.
Portfolio once_shout_portfolio(double strike, double T1, double T2, const MarketParams& params);
double price_once_shout_call(double x, double t, double strike, double T1, double T2, const MarketParams& params,
                             double mvn_tol = kDefaultMvnTolerance);

/// Valid for t < T_0.
Portfolio twice_shout_portfolio(const TwiceShoutCall& c, const MarketParams& params,
                                double mvn_tol = kDefaultMvnTolerance);
double price_twice_shout_call(double x, double t, const TwiceShoutCall& c, const MarketParams& params,
                              double mvn_tol = kDefaultMvnTolerance);

}  // namespace hob
