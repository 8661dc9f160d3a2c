#pragma once

#include <vector>

#include "hob/binaries/spec.hpp"
#include "hob/numerics/mvn.hpp"
#include "hob/replication/portfolio.hpp"

namespace hob {

/// Put exercisable only on `exercise_dates`; the last one is final expiry.
struct BermudanPut {
    double strike = 0.0;
    std::vector<double> exercise_dates;

    /// ValidationError naming "strike" or "exercise_dates".
    void validate() const;
    friend bool operator==(const BermudanPut&, const BermudanPut&) = default;
};

/// a[j] is the exercise boundary at exercise_dates[j]: exercise iff x < a[j].
/// One entry per date except the last.
struct BermudanBoundaries {
    std::vector<double> a;
};

/// Solved backward from the second-to-last date, each root to
/// |V(a) - (K - a)| <= 1e-10 K on (1e-8 K, K(1 - 1e-12)). Throws
/// RootNotBracketed when early exercise is never optimal at some date
/// (for instance r <= 0).
BermudanBoundaries bermudan_boundaries(const BermudanPut& c, const MarketParams& params,
                                       double mvn_tol = kDefaultMvnTolerance);

/// Replicating portfolio for valuation times in [exercise_dates[m-1],
/// exercise_dates[m]), where m counts the dates at or before t. A valuation
/// on an exercise date therefore excludes that date's exercise right.
Portfolio bermudan_portfolio(const BermudanPut& c, const BermudanBoundaries& b, double t);

double price_bermudan_put(double x, double t, const BermudanPut& c, const MarketParams& params,
                          double mvn_tol = kDefaultMvnTolerance);

/// Same, reusing boundaries already solved for (c, params).
double price_bermudan_put(double x, double t, const BermudanPut& c, const BermudanBoundaries& b,
                          const MarketParams& params, double mvn_tol = kDefaultMvnTolerance);

}  // namespace hob
