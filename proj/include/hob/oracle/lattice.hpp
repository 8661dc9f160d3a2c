#pragma once

#include "hob/exotics/bermudan.hpp"

namespace hob {

struct LatticeEstimate {
    double value = 0.0;   ///< Richardson extrapolation 2 P(2N) - P(N)
    double coarse = 0.0;  ///< P(N)
    double fine = 0.0;    ///< P(2N)
    int steps = 0;        ///< N after snapping adjustment
    double error() const { return std::abs(value - fine); }
};

/// CRR binomial tree for a Bermudan put, exercise applied only at the
/// levels nearest each exercise date after t. The last step uses the
/// Black-Scholes put (binomial Black-Scholes), and at each exercise level
/// the node whose cell holds the boundary takes the cell average of the
/// exercise maximum. Both remove the oscillation in the step count so the
/// O(1/N) error extrapolates cleanly. The step count is raised from `steps`
/// until every date snaps within 1e-4 years.
double lattice_bermudan_price(double x, double t, const BermudanPut& c, const MarketParams& params, int steps);

/// Runs N and 2N steps and extrapolates. steps >= 100.
LatticeEstimate lattice_bermudan(double x, double t, const BermudanPut& c, const MarketParams& params,
                                 int steps = 2000);

}  // namespace hob
