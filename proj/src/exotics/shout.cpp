#include "hob/exotics/shout.hpp"

#include <cmath>

#include "hob/errors.hpp"
#include "hob/numerics/normal.hpp"
#include "schedule.hpp"

namespace hob {

namespace {

struct DPair {
    double plus;
    double minus;
};

// d^(+/-)(T1, T2) = [(r - q) / sigma +/- sigma / 2] sqrt(T2 - T1)
DPair d_pm(double T1, double T2, const MarketParams& p) {
    const double root = std::sqrt(T2 - T1);
    const double a = (p.r - p.q) / p.sigma;
    return {(a + 0.5 * p.sigma) * root, (a - 0.5 * p.sigma) * root};
}

void check_ordered(std::initializer_list<double> dates) {
    std::vector<double> v(dates);
    detail::check_schedule(v, "shout_dates");
}

BinarySpec make(BinaryKind kind, std::vector<Sign> signs, std::vector<double> prices, std::vector<double> dates) {
    return {kind, std::move(signs), std::move(prices), std::move(dates)};
}

}  // namespace

void TwiceShoutCall::validate() const {
    detail::check_positive(strike, "strike");
    if (!(shout_dates[0] > 0.0)) throw ValidationError("shout dates must be positive", "shout_dates");
    detail::check_schedule({shout_dates[0], shout_dates[1]}, "shout_dates");
    if (!std::isfinite(final_expiry) || !(final_expiry - shout_dates[1] >= kMinExpiryGap))
        throw NonIncreasingExpiries("final expiry must follow the last shout date", "final_expiry");
}

double shout_g(double T1, double T2, const MarketParams& params) {
    params.validate();
    check_ordered({T1, T2});
    const DPair d = d_pm(T1, T2, params);
    const double tau = T2 - T1;
    return std::exp(-params.q * tau) * norm_cdf(d.plus) - std::exp(-params.r * tau) * norm_cdf(d.minus);
}

double shout_g1(double T0, double T1, double T2, const MarketParams& params, double mvn_tol) {
    params.validate();
    check_ordered({T0, T1, T2});
    const DPair d01 = d_pm(T0, T1, params);
    const DPair d02 = d_pm(T0, T2, params);
    // Correlation of the (-, +) sign pattern over (T1, T2) seen from T0.
    const double rho = -std::sqrt((T1 - T0) / (T2 - T0));
    const CorrelationMatrix corr(Matrix{{1.0, rho}, {rho, 1.0}});
    const double plus[] = {-d01.plus, d02.plus};
    const double minus[] = {-d01.minus, d02.minus};
    const double tau = T2 - T0;
    return std::exp(-params.q * tau) * mvn_cdf(plus, corr, mvn_tol) -
           std::exp(-params.r * tau) * mvn_cdf(minus, corr, mvn_tol);
}

double shout_G(double T0, double T1, double T2, const MarketParams& params, double mvn_tol) {
    const DPair d01 = d_pm(T0, T1, params);
    const double g = shout_g(T1, T2, params);
    return (std::exp(-params.r * (T2 - T1)) + g) * std::exp(-params.q * (T1 - T0)) * norm_cdf(d01.plus) +
           std::exp(-params.r * (T2 - T0)) * norm_cdf(-d01.minus) + shout_g1(T0, T1, T2, params, mvn_tol);
}

Portfolio once_shout_portfolio(double strike, double T1, double T2, const MarketParams& params) {
    detail::check_positive(strike, "strike");
    const double K = strike;
    Portfolio p;
    // Below K at T1: a call to T2. Above: K locked in plus a forward-start
    // at-the-money call.
    p.add(1.0, make(BinaryKind::q(K), {Sign::Down, Sign::Up}, {K, K}, {T1, T2}));
    p.add(std::exp(-params.r * (T2 - T1)), make(BinaryKind::q(K), {Sign::Up}, {K}, {T1}));
    p.add(shout_g(T1, T2, params), make(BinaryKind::asset(), {Sign::Up}, {K}, {T1}));
    return p;
}

double price_once_shout_call(double x, double t, double strike, double T1, double T2, const MarketParams& params,
                             double mvn_tol) {
    return price_portfolio(x, t, once_shout_portfolio(strike, T1, T2, params), params, mvn_tol);
}

Portfolio twice_shout_portfolio(const TwiceShoutCall& c, const MarketParams& params, double mvn_tol) {
    c.validate();
    params.validate();
    const double K = c.strike;
    const double T0 = c.shout_dates[0], T1 = c.shout_dates[1], T2 = c.final_expiry;
    Portfolio p;
    p.add(1.0, make(BinaryKind::q(K), {Sign::Down, Sign::Down, Sign::Up}, {K, K, K}, {T0, T1, T2}));
    p.add(std::exp(-params.r * (T2 - T1)), make(BinaryKind::q(K), {Sign::Down, Sign::Up}, {K, K}, {T0, T1}));
    p.add(shout_g(T1, T2, params), make(BinaryKind::asset(), {Sign::Down, Sign::Up}, {K, K}, {T0, T1}));
    p.add(shout_G(T0, T1, T2, params, mvn_tol), make(BinaryKind::asset(), {Sign::Up}, {K}, {T0}));
    p.add(-K * std::exp(-params.r * (T2 - T0)), make(BinaryKind::bond(), {Sign::Up}, {K}, {T0}));
    return p;
}

double price_twice_shout_call(double x, double t, const TwiceShoutCall& c, const MarketParams& params,
                              double mvn_tol) {
    return price_portfolio(x, t, twice_shout_portfolio(c, params, mvn_tol), params, mvn_tol);
}

}  // namespace hob
