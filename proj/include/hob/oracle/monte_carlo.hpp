#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "hob/binaries/spec.hpp"
#include "hob/exotics/shout.hpp"
#include "hob/replication/portfolio.hpp"

namespace hob {

struct McConfig {
    std::uint64_t n_paths = 100000;
    std::uint64_t seed = 42;
    bool antithetic = false;
    /// 0 picks std::thread::hardware_concurrency(). The estimate does not
    /// depend on it.
    unsigned threads = 0;

    /// n_paths >= 2, and even when antithetic.
    void validate() const;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;  ///< sample std / sqrt(samples)
    std::uint64_t n_paths = 0;
};

/// Sample mean of f over independent standard-normal vectors of length
/// `dims`. Path i draws from Philox stream i; with antithetic sampling each
/// sample is the average of f(z) and f(-z) and the standard error is taken
/// over these pair averages. Paths are processed in fixed batches merged in
/// batch order, so the result is bit-identical for any thread count.
McEstimate monte_carlo(const McConfig& cfg, std::size_t dims,
                       const std::function<double(std::span<const double>)>& f);

/// Exact lognormal simulation of spot on the portfolio's dates, each leg
/// paid at its own final date and discounted at r to t.
McEstimate mc_price_portfolio(double x, double t, const Portfolio& p, const MarketParams& params,
                              const McConfig& cfg);

/// Payoff max(x(T0) - K, x(T1) - K, x(T2) - K, 0) at T2, discounted to t.
McEstimate mc_twice_shout(double x, double t, const TwiceShoutCall& c, const MarketParams& params,
                          const McConfig& cfg);

}  // namespace hob
