#pragma once

#include <vector>

#include "hob/binaries/spec.hpp"
#include "hob/numerics/mvn.hpp"

namespace hob {

struct DValues {
    std::vector<double> d;
    std::vector<double> d_prime;
};

/// d_i = [ln(x / xi_i) + (r - q + sigma^2 / 2)(T_i - t)] / (sigma sqrt(T_i - t)),
/// d'_i = d_i - sigma sqrt(T_i - t). Throws TimeAfterFirstExpiry if t >= T_0.
DValues d_values(double x, double t, const BinarySpec& spec, const MarketParams& params);

/// Closed forms for n-th order binaries, valid for t < T_0. The kind stored
/// in `spec` is ignored by the asset and bond pricers so a Q spec can be
/// decomposed without copying.
///
/// When T_0 - t is below kNearExpiry the first indicator is settled with the
/// current spot and the remaining dates are priced as a lower-order binary.
double price_asset_binary(double x, double t, const BinarySpec& spec, const MarketParams& params,
                          double mvn_tol = kDefaultMvnTolerance);
double price_bond_binary(double x, double t, const BinarySpec& spec, const MarketParams& params,
                         double mvn_tol = kDefaultMvnTolerance);

/// s_{n-1} [A - K B] for spec.kind = Q(K). Not clamped at zero: with
/// exercise price and strike on opposite sides the payoff can be negative.
double price_q_binary(double x, double t, const BinarySpec& spec, const MarketParams& params,
                      double mvn_tol = kDefaultMvnTolerance);

/// Dispatches on spec.kind.
double price_binary(double x, double t, const BinarySpec& spec, const MarketParams& params,
                    double mvn_tol = kDefaultMvnTolerance);

inline constexpr double kNearExpiry = 1e-10;

}  // namespace hob
