#include "hob/exotics/extendable.hpp"

#include <cmath>
#include <limits>

#include "hob/errors.hpp"
#include "hob/numerics/roots.hpp"
#include "schedule.hpp"

namespace hob {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Search for b_k stops at this multiple of K_k; beyond it b_k = +inf.
constexpr double kUpperSearchLimit = 1 << 24;

// Visit every choice of a_k or b_k for levels [from, to), passing the chosen
// prices and the product of their signs (+1 for a, -1 for b). Choices with
// b_k = +inf never trigger and are skipped.
template <class F>
void for_each_path(const ExtendableBoundaries& b, std::size_t from, std::size_t to, F&& visit) {
    std::vector<double> prices;
    auto recurse = [&](auto&& self, std::size_t level, double sign) -> void {
        if (level == to) {
            visit(prices, sign);
            return;
        }
        prices.push_back(b.a[level]);
        self(self, level + 1, sign);
        prices.back() = b.b[level];
        if (std::isfinite(b.b[level])) self(self, level + 1, -sign);
        prices.pop_back();
    };
    recurse(recurse, from, 1.0);
}

BinarySpec all_up(BinaryKind kind, std::vector<double> prices, const std::vector<double>& dates, std::size_t from) {
    BinarySpec spec;
    spec.kind = kind;
    spec.exercise_prices = std::move(prices);
    spec.signs.assign(spec.exercise_prices.size(), Sign::Up);
    spec.expiries.assign(dates.begin() + static_cast<std::ptrdiff_t>(from),
                         dates.begin() + static_cast<std::ptrdiff_t>(from + spec.exercise_prices.size()));
    return spec;
}

// Value valid on [T_{i-1}, T_i); reads boundaries at levels i..n-1.
Portfolio continuation(const ExtendableCall& c, const ExtendableBoundaries& b, std::size_t i) {
    const std::size_t n = c.extensions();
    const auto& T = c.decision_dates;
    const auto& K = c.strikes;
    Portfolio p;
    // Extended through every level, call struck at K_n.
    for_each_path(b, i, n, [&](std::vector<double> prices, double s) {
        prices.push_back(K[n]);
        p.add(s, all_up(BinaryKind::q(K[n]), std::move(prices), T, i));
    });
    for (std::size_t k = i; k < n; ++k) {
        // Exercised at T_k above b_k: x - K_k, plus the premium refunded by
        // the bond term below.
        if (std::isfinite(b.b[k])) {
            for_each_path(b, i, k, [&](std::vector<double> prices, double s) {
                prices.push_back(b.b[k]);
                const double strike = K[k] - c.extension_premiums[k];
                if (strike > 0.0) {
                    p.add(s, all_up(BinaryKind::q(strike), std::move(prices), T, i));
                } else {
                    p.add(s, all_up(BinaryKind::asset(), prices, T, i));
                    p.add(-s * strike, all_up(BinaryKind::bond(), std::move(prices), T, i));
                }
            });
        }
        // Premium paid at T_k whenever x > a_k.
        if (c.extension_premiums[k] != 0.0) {
            for_each_path(b, i, k, [&](std::vector<double> prices, double s) {
                prices.push_back(b.a[k]);
                p.add(-c.extension_premiums[k] * s, all_up(BinaryKind::bond(), std::move(prices), T, i));
            });
        }
    }
    return p;
}

}  // namespace

void ExtendableCall::validate() const {
    detail::check_schedule(decision_dates, "decision_dates");
    if (strikes.size() != decision_dates.size())
        throw DimensionMismatch("one strike per decision date", "strikes");
    for (double k : strikes) detail::check_positive(k, "strikes");
    if (extension_premiums.size() + 1 != decision_dates.size())
        throw DimensionMismatch("one premium per decision date except the last", "extension_premiums");
    for (double premium : extension_premiums)
        if (!(premium >= 0.0) || !std::isfinite(premium))
            throw ValidationError("premiums must be nonnegative and finite", "extension_premiums");
}

ExtendableBoundaries extendable_boundaries(const ExtendableCall& c, const MarketParams& params, double mvn_tol) {
    c.validate();
    params.validate();
    const std::size_t n = c.extensions();
    ExtendableBoundaries out{std::vector<double>(n, 0.0), std::vector<double>(n, kInf)};
    for (std::size_t k = n; k-- > 0;) {
        const Portfolio next = continuation(c, out, k + 1);
        const double date = c.decision_dates[k];
        const double K = c.strikes[k];
        const double premium = c.extension_premiums[k];
        auto extend = [&](double x) { return price_portfolio(x, date, next, params, mvn_tol) - premium; };
        auto extend_vs_exercise = [&](double x) { return extend(x) - (x - K); };
        const double f_tol = 1e-10 * K;

        const double lo = 1e-8 * K;
        if (!(extend(K) > 0.0))
            throw ExtensionNeverOptimal("extension at decision date " + std::to_string(k) +
                                        " is worth less than its premium at the strike");
        if (!(extend(lo) < 0.0))
            throw ExtensionNeverOptimal("extension at decision date " + std::to_string(k) +
                                        " is worth more than its premium for every spot; no lower boundary");
        out.a[k] = find_root(extend, lo, K, f_tol).root;

        double hi = 4.0 * K;
        while (extend_vs_exercise(hi) >= 0.0 && hi < kUpperSearchLimit * K) hi *= 2.0;
        if (extend_vs_exercise(hi) < 0.0) out.b[k] = find_root(extend_vs_exercise, K, hi, f_tol).root;
    }
    return out;
}

Portfolio extendable_portfolio(const ExtendableCall& c, const ExtendableBoundaries& b, double t) {
    c.validate();
    if (b.a.size() != c.extensions() || b.b.size() != c.extensions())
        throw DimensionMismatch("one boundary pair per extension", "boundaries");
    return continuation(c, b, detail::interval_index(c.decision_dates, t));
}

double price_extendable_call(double x, double t, const ExtendableCall& c, const ExtendableBoundaries& b,
                             const MarketParams& params, double mvn_tol) {
    return price_portfolio(x, t, extendable_portfolio(c, b, t), params, mvn_tol);
}

double price_extendable_call(double x, double t, const ExtendableCall& c, const MarketParams& params,
                             double mvn_tol) {
    return price_extendable_call(x, t, c, extendable_boundaries(c, params, mvn_tol), params, mvn_tol);
}

}  // namespace hob
