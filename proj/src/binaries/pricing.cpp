#include "hob/binaries/pricing.hpp"

#include <cmath>

#include "hob/binaries/expiry_grid.hpp"
#include "hob/errors.hpp"

namespace hob {

namespace {

void check_inputs(double x, double t, const BinarySpec& spec, const MarketParams& params) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError("spot must be positive and finite", "spot");
    params.validate();
    spec.validate();
    check_expiry_grid(t, spec.expiries);
}

struct Legs {
    double asset = 0.0;
    double bond = 0.0;
};

BinarySpec drop_first(const BinarySpec& spec) {
    BinarySpec tail;
    tail.kind = spec.kind;
    tail.signs.assign(spec.signs.begin() + 1, spec.signs.end());
    tail.exercise_prices.assign(spec.exercise_prices.begin() + 1, spec.exercise_prices.end());
    tail.expiries.assign(spec.expiries.begin() + 1, spec.expiries.end());
    return tail;
}

// Inputs already validated.
Legs legs(double x, double t, const BinarySpec& spec, const MarketParams& params, double tol, bool want_asset,
          bool want_bond) {
    const std::size_t n = spec.order();
    const double last = spec.expiries.back() - t;

    if (spec.expiries.front() - t < kNearExpiry) {
        const double s = sign_value(spec.signs.front());
        if (!(s * x > s * spec.exercise_prices.front())) return {};
        if (n == 1) return {x * std::exp(-params.q * last), std::exp(-params.r * last)};
        return legs(x, t, drop_first(spec), params, tol, want_asset, want_bond);
    }

    const DValues dv = d_values(x, t, spec, params);
    const CorrelationMatrix corr = correlation_from_expiries(t, spec.expiries, spec.signs);
    std::vector<double> upper(n);
    Legs out;
    if (want_asset) {
        for (std::size_t i = 0; i < n; ++i) upper[i] = sign_value(spec.signs[i]) * dv.d[i];
        out.asset = x * std::exp(-params.q * last) * mvn_cdf(upper, corr, tol);
    }
    if (want_bond) {
        for (std::size_t i = 0; i < n; ++i) upper[i] = sign_value(spec.signs[i]) * dv.d_prime[i];
        out.bond = std::exp(-params.r * last) * mvn_cdf(upper, corr, tol);
    }
    return out;
}

}  // namespace

DValues d_values(double x, double t, const BinarySpec& spec, const MarketParams& params) {
    check_inputs(x, t, spec, params);
    const std::size_t n = spec.order();
    DValues out{std::vector<double>(n), std::vector<double>(n)};
    const double drift = params.r - params.q + 0.5 * params.sigma * params.sigma;
    for (std::size_t i = 0; i < n; ++i) {
        const double tau = spec.expiries[i] - t;
        const double vol = params.sigma * std::sqrt(tau);
        out.d[i] = (std::log(x / spec.exercise_prices[i]) + drift * tau) / vol;
        out.d_prime[i] = out.d[i] - vol;
    }
    return out;
}

double price_asset_binary(double x, double t, const BinarySpec& spec, const MarketParams& params,
                          double mvn_tol) {
    check_inputs(x, t, spec, params);
    return legs(x, t, spec, params, mvn_tol, true, false).asset;
}

double price_bond_binary(double x, double t, const BinarySpec& spec, const MarketParams& params,
                         double mvn_tol) {
    check_inputs(x, t, spec, params);
    return legs(x, t, spec, params, mvn_tol, false, true).bond;
}

double price_q_binary(double x, double t, const BinarySpec& spec, const MarketParams& params, double mvn_tol) {
    if (spec.kind.type != BinaryKind::Type::Q) throw ValidationError("price_q_binary needs a Q spec", "kind");
    check_inputs(x, t, spec, params);
    const Legs l = legs(x, t, spec, params, mvn_tol, true, true);
    return sign_value(spec.signs.back()) * (l.asset - spec.kind.strike * l.bond);
}

double price_binary(double x, double t, const BinarySpec& spec, const MarketParams& params, double mvn_tol) {
    switch (spec.kind.type) {
        case BinaryKind::Type::Asset: return price_asset_binary(x, t, spec, params, mvn_tol);
        case BinaryKind::Type::Bond: return price_bond_binary(x, t, spec, params, mvn_tol);
        case BinaryKind::Type::Q: return price_q_binary(x, t, spec, params, mvn_tol);
    }
    return 0.0;
}

}  // namespace hob
