#pragma once

#include <functional>
#include <span>

#include "hob/binaries/spec.hpp"

namespace hob {

/// e^{-r(T-t)} E[f(x(T)) | x(t) = x] under risk-neutral lognormal dynamics,
/// integrated against the lognormal kernel to absolute `accuracy`.
/// Breakpoints mark kinks or jumps of the payoff. Throws NonConvergent.
double quadrature_standard_option(double x, double t, double T, const std::function<double(double)>& payoff,
                                  const MarketParams& params, double accuracy,
                                  std::span<const double> breakpoints = {});

/// An n-th order binary (n >= 2) priced by integrating the (n-1)-th order
/// closed form at T_0 against the kernel over the region where the first
/// indicator holds.
double quadrature_binary_recursion(double x, double t, const BinarySpec& spec, const MarketParams& params,
                                   double accuracy);

}  // namespace hob
