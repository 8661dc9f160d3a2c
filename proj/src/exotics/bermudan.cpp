#include "hob/exotics/bermudan.hpp"

#include "hob/errors.hpp"
#include "hob/numerics/roots.hpp"
#include "schedule.hpp"

namespace hob {

namespace {

// Q-binary surviving a[m..last-1] (stay above each boundary) and paying
// the put payoff below `final_price` at dates[last].
BinarySpec put_leg(const BermudanPut& c, const std::vector<double>& a, std::size_t m, std::size_t last,
                   double final_price) {
    BinarySpec spec;
    spec.kind = BinaryKind::q(c.strike);
    for (std::size_t j = m; j <= last; ++j) {
        spec.signs.push_back(j == last ? Sign::Down : Sign::Up);
        spec.exercise_prices.push_back(j == last ? final_price : a[j]);
        spec.expiries.push_back(c.exercise_dates[j]);
    }
    return spec;
}

// Continuation value valid before exercise_dates[m]; reads a[m..n-2].
Portfolio continuation(const BermudanPut& c, const std::vector<double>& a, std::size_t m) {
    const std::size_t n = c.exercise_dates.size();
    Portfolio p;
    p.add(1.0, put_leg(c, a, m, n - 1, c.strike));
    for (std::size_t k = n - 1; k-- > m;) p.add(1.0, put_leg(c, a, m, k, a[k]));
    return p;
}

}  // namespace

void BermudanPut::validate() const {
    detail::check_positive(strike, "strike");
    detail::check_schedule(exercise_dates, "exercise_dates");
}

BermudanBoundaries bermudan_boundaries(const BermudanPut& c, const MarketParams& params, double mvn_tol) {
    c.validate();
    params.validate();
    const std::size_t n = c.exercise_dates.size();
    const double K = c.strike;
    std::vector<double> a(n > 0 ? n - 1 : 0, 0.0);
    for (std::size_t j = n - 1; j-- > 0;) {
        const Portfolio tail = continuation(c, a, j + 1);
        const double date = c.exercise_dates[j];
        auto f = [&](double x) { return price_portfolio(x, date, tail, params, mvn_tol) - (K - x); };
        const double lo = 1e-8 * K;
        // Exercise must win strictly deep in the money; a zero continuation
        // premium there (r = 0) means no boundary at all.
        if (!(f(lo) < 0.0))
            throw RootNotBracketed("no early-exercise boundary at exercise date " + std::to_string(j) +
                                   ": continuation never falls below intrinsic value");
        try {
            a[j] = find_root(f, lo, K * (1.0 - 1e-12), 1e-10 * K).root;
        } catch (const RootNotBracketed&) {
            throw RootNotBracketed("no early-exercise boundary at exercise date " + std::to_string(j) +
                                   ": continuation never meets intrinsic value");
        }
    }
    return {a};
}

Portfolio bermudan_portfolio(const BermudanPut& c, const BermudanBoundaries& b, double t) {
    c.validate();
    if (b.a.size() + 1 != c.exercise_dates.size())
        throw DimensionMismatch("one boundary per exercise date except the last", "boundaries");
    return continuation(c, b.a, detail::interval_index(c.exercise_dates, t));
}

double price_bermudan_put(double x, double t, const BermudanPut& c, const BermudanBoundaries& b,
                          const MarketParams& params, double mvn_tol) {
    return price_portfolio(x, t, bermudan_portfolio(c, b, t), params, mvn_tol);
}

double price_bermudan_put(double x, double t, const BermudanPut& c, const MarketParams& params, double mvn_tol) {
    return price_bermudan_put(x, t, c, bermudan_boundaries(c, params, mvn_tol), params, mvn_tol);
}

}  // namespace hob
