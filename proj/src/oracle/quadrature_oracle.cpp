#include "hob/oracle/quadrature_oracle.hpp"

#include <cmath>
#include <vector>

#include "hob/binaries/expiry_grid.hpp"
#include "hob/binaries/pricing.hpp"
#include "hob/errors.hpp"
#include "hob/numerics/normal.hpp"
#include "hob/numerics/quadrature.hpp"

namespace hob {

double quadrature_standard_option(double x, double t, double T, const std::function<double(double)>& payoff,
                                  const MarketParams& params, double accuracy,
                                  std::span<const double> breakpoints) {
    params.validate();
    if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError("spot must be positive and finite", "spot");
    if (!(t < T)) throw TimeAfterFirstExpiry("valuation time is not before expiry", "time");
    const double tau = T - t;
    const double sd = params.sigma * std::sqrt(tau);
    const double mu = std::log(x) + (params.r - params.q - 0.5 * params.sigma * params.sigma) * tau;
    const double discount = std::exp(-params.r * tau);

    auto kernel = [&](double z) { return norm_pdf((std::log(z) - mu) / sd) / (z * sd); };
    std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
    cuts.push_back(std::exp(mu));
    // The integrand is scaled by the discount, so the accuracy is too.
    const auto result =
        gauss_quadrature([&](double z) { return payoff(z) * kernel(z); }, accuracy / discount, cuts);
    return discount * result.value;
}

double quadrature_binary_recursion(double x, double t, const BinarySpec& spec, const MarketParams& params,
                                   double accuracy) {
    spec.validate();
    check_expiry_grid(t, spec.expiries);
    if (spec.order() < 2) throw DimensionMismatch("recursion needs at least two dates", "expiries");
    BinarySpec tail = spec;
    tail.signs.erase(tail.signs.begin());
    tail.exercise_prices.erase(tail.exercise_prices.begin());
    tail.expiries.erase(tail.expiries.begin());
    const double T0 = spec.expiries.front();
    const double s0 = sign_value(spec.signs.front());
    const double xi0 = spec.exercise_prices.front();
    auto payoff = [&](double z) {
        if (!(s0 * z > s0 * xi0)) return 0.0;
        return price_binary(z, T0, tail, params, 1e-12);
    };
    const double cuts[] = {xi0};
    return quadrature_standard_option(x, t, T0, payoff, params, accuracy, cuts);
}

}  // namespace hob
