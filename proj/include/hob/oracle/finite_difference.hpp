#pragma once

#include "hob/exotics/extendable.hpp"

namespace hob {

struct GridConfig {
    int n_space = 800;
    int n_time_per_interval = 400;
    /// Upper edge of the grid as a multiple of the largest strike (or spot).
    double x_max_multiple = 4.0;

    /// n_space >= 50, n_time_per_interval >= 50, x_max_multiple >= 4.
    void validate() const;
};

/// Crank-Nicolson in log-spot, interval by interval backward from the final
/// expiry with terminal value (x - K_n)^+, applying
/// max(V - C_k, (x - K_k)^+) at each decision date after t. Each interval
/// starts with two Rannacher steps (implicit half steps) to damp the kinks.
/// V = 0 at the lower edge; V linear in spot at the upper edge. The grid is
/// shifted so x is a node.
double fd_extendable(double x, double t, const ExtendableCall& c, const MarketParams& params,
                     const GridConfig& cfg = {});

}  // namespace hob
