#pragma once

#include <vector>

#include "hob/binaries/spec.hpp"
#include "hob/numerics/mvn.hpp"
#include "hob/replication/portfolio.hpp"

namespace hob {

/// Call with expiry decision_dates[0] and strike strikes[0]. At each
/// decision date k < n the holder may instead pay extension_premiums[k] to
/// move to (decision_dates[k+1], strikes[k+1]). n = 0 is a European call.
struct ExtendableCall {
    std::vector<double> decision_dates;  ///< T_0 .. T_n
    std::vector<double> strikes;         ///< K_0 .. K_n
    std::vector<double> extension_premiums;  ///< C_0 .. C_{n-1}

    std::size_t extensions() const noexcept { return extension_premiums.size(); }

    /// ValidationError naming "decision_dates", "strikes" or
    /// "extension_premiums".
    void validate() const;
    friend bool operator==(const ExtendableCall&, const ExtendableCall&) = default;
};

/// At decision date k: extend iff a[k] < x < b[k], exercise iff x >= b[k].
/// b[k] is +infinity when extending beats exercising for every large spot
/// (possible when q <= 0).
struct ExtendableBoundaries {
    std::vector<double> a;
    std::vector<double> b;
};

/// Solved backward from k = n-1 to |residual| <= 1e-10 K_k. Throws
/// ExtensionNeverOptimal when a[k] < K_k cannot hold (zero premium
/// included: extension then has value for every x > 0), RootNotBracketed if
/// a bracket cannot be found.
ExtendableBoundaries extendable_boundaries(const ExtendableCall& c, const MarketParams& params,
                                           double mvn_tol = kDefaultMvnTolerance);

/// Replicating portfolio for valuation times in [T_{i-1}, T_i), i the
/// number of decision dates at or before t.
Portfolio extendable_portfolio(const ExtendableCall& c, const ExtendableBoundaries& b, double t);

double price_extendable_call(double x, double t, const ExtendableCall& c, const MarketParams& params,
                             double mvn_tol = kDefaultMvnTolerance);

double price_extendable_call(double x, double t, const ExtendableCall& c, const ExtendableBoundaries& b,
                             const MarketParams& params, double mvn_tol = kDefaultMvnTolerance);

}  // namespace hob
