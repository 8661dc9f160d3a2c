#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hob/binaries/pricing.hpp"
#include "hob/errors.hpp"
#include "hob/exotics/bermudan.hpp"
#include "hob/exotics/extendable.hpp"
#include "hob/exotics/shout.hpp"
#include "hob/numerics/normal.hpp"
#include "random_specs.hpp"

using namespace hob;

namespace {

constexpr double kG = 0.10450583572185567;  // tests/oracles/reference_values.py
const MarketParams kMarket{0.05, 0.0, 0.2};
const MarketParams kDividend{0.05, 0.03, 0.2};

// Textbook Black-Scholes, coded separately from the binary pricers.
double bs(double s, double k, double tau, const MarketParams& p, bool call) {
    const double vol = p.sigma * std::sqrt(tau);
    const double d1 = (std::log(s / k) + (p.r - p.q + 0.5 * p.sigma * p.sigma) * tau) / vol;
    const double d2 = d1 - vol;
    const double c = s * std::exp(-p.q * tau) * norm_cdf(d1) - k * std::exp(-p.r * tau) * norm_cdf(d2);
    return call ? c : c - s * std::exp(-p.q * tau) + k * std::exp(-p.r * tau);
}

double delta(const std::function<double(double)>& v, double x) {
    const double h = 1e-4 * x;
    return (v(x + h) - v(x - h)) / (2.0 * h);
}

}  // namespace

// ---- Bermudan put -------------------------------------------------------

TEST(Bermudan, SingleDateIsEuropean) {
    const BermudanPut c{100, {1.0}};
    EXPECT_TRUE(bermudan_boundaries(c, kMarket).a.empty());
    EXPECT_NEAR(price_bermudan_put(100, 0, c, kMarket), bs(100, 100, 1, kMarket, false), 1e-12);
    EXPECT_NEAR(price_bermudan_put(100, 0, c, kMarket), 5.57352602225696769, 1e-12);
}

TEST(Bermudan, TwoDateBoundarySolvesEuropeanPutEquation) {
    const BermudanPut c{100, {0.5, 1.0}};
    const auto b = bermudan_boundaries(c, kMarket);
    ASSERT_EQ(b.a.size(), 1u);
    const double a = b.a[0];
    EXPECT_GT(a, 0.0);
    EXPECT_LT(a, 100.0);
    EXPECT_LE(std::abs(bs(a, 100, 0.5, kMarket, false) - (100 - a)), 1e-10 * 100);
    // Sign change either side: hold above, exercise below.
    EXPECT_LT(bs(a - 0.01, 100, 0.5, kMarket, false), 100 - (a - 0.01));
    EXPECT_GT(bs(a + 0.01, 100, 0.5, kMarket, false), 100 - (a + 0.01));
}

TEST(Bermudan, BoundaryResidualsAtEveryDate) {
    const BermudanPut c{100, {0.2, 0.45, 0.7, 0.85, 1.0}};
    const auto b = bermudan_boundaries(c, kMarket);
    ASSERT_EQ(b.a.size(), 4u);
    for (std::size_t j = 0; j < b.a.size(); ++j) {
        EXPECT_GT(b.a[j], 0.0);
        EXPECT_LT(b.a[j], 100.0);
        // Continuation just after date j, evaluated at date j.
        const double cont = price_bermudan_put(b.a[j], c.exercise_dates[j], c, b, kMarket);
        EXPECT_LE(std::abs(cont - (100 - b.a[j])), 1e-10 * 100) << j;
    }
    // Boundaries rise towards expiry.
    for (std::size_t j = 1; j < b.a.size(); ++j) EXPECT_GT(b.a[j], b.a[j - 1]);
}

TEST(Bermudan, ZeroRateHasNoBoundary) {
    const BermudanPut c{100, {0.5, 1.0}};
    EXPECT_THROW(bermudan_boundaries(c, MarketParams{0.0, 0.0, 0.2}), RootNotBracketed);
}

TEST(Bermudan, BoundsAndDominance) {
    const std::vector<std::vector<double>> nested = {{1.0}, {0.5, 1.0}, {0.25, 0.5, 1.0}, {0.25, 0.5, 0.75, 1.0}};
    for (double x : {60.0, 85.0, 100.0, 120.0, 180.0}) {
        double previous = bs(x, 100, 1.0, kMarket, false) - 1e-9;
        for (const auto& dates : nested) {
            const double v = price_bermudan_put(x, 0, BermudanPut{100, dates}, kMarket);
            EXPECT_GE(v, previous - 1e-8) << x << " with " << dates.size() << " dates";
            EXPECT_LE(v, 100.0);
            previous = v;
        }
    }
    EXPECT_LT(price_bermudan_put(1e4, 0, BermudanPut{100, {0.5, 1.0}}, kMarket), 1e-12);
}

TEST(Bermudan, DeltaBetweenMinusOneAndZero) {
    // With q = 0 the deep in-the-money delta is -1 to machine precision, so
    // the strict bound is checked under a dividend yield.
    const BermudanPut c{100, {0.25, 0.5, 1.0}};
    const auto b = bermudan_boundaries(c, kDividend);
    for (double t : {0.0, 0.2}) {
        for (double x = 25.0; x <= 400.0; x *= 1.3) {
            const double d = delta([&](double s) { return price_bermudan_put(s, t, c, b, kDividend); }, x);
            EXPECT_GT(d, -1.0) << x;
            EXPECT_LT(d, 0.0) << x;
        }
    }
}

TEST(Bermudan, MidLifeUsesTheRemainingDates) {
    const BermudanPut full{100, {0.25, 0.5, 0.75, 1.0}};
    const BermudanPut rest{100, {0.5, 0.75, 1.0}};
    const auto bf = bermudan_boundaries(full, kMarket);
    const auto br = bermudan_boundaries(rest, kMarket);
    EXPECT_NEAR(bf.a[1], br.a[0], 1e-12);
    EXPECT_NEAR(bf.a[2], br.a[1], 1e-12);
    for (double t : {0.25, 0.3, 0.49}) {
        EXPECT_NEAR(price_bermudan_put(95, t, full, bf, kMarket), price_bermudan_put(95, t, rest, br, kMarket),
                    1e-12);
    }
    // In the last interval only the European put is left.
    EXPECT_NEAR(price_bermudan_put(95, 0.8, full, bf, kMarket), bs(95, 100, 0.2, kMarket, false), 1e-12);
    EXPECT_THROW(price_bermudan_put(95, 1.0, full, bf, kMarket), TimeAfterFirstExpiry);
}

TEST(Bermudan, ContinuousIntoFirstExerciseDate) {
    const BermudanPut c{100, {0.5, 1.0}};
    const auto b = bermudan_boundaries(c, kMarket);
    for (double x : {70.0, 88.0, 95.0, 110.0}) {
        const double at_date = std::max(price_bermudan_put(x, 0.5, c, b, kMarket), 100 - x);
        const double before = price_bermudan_put(x, 0.5 - 1e-6, c, b, kMarket);
        EXPECT_NEAR(before / at_date, 1.0, 1e-4) << x;
    }
}

TEST(Bermudan, ReplicationPortfolioStructure) {
    const BermudanPut c{100, {0.25, 0.5, 0.75, 1.0}};
    const auto b = bermudan_boundaries(c, kMarket);
    const Portfolio p = bermudan_portfolio(c, b, 0.0);
    // One term per tail length.
    ASSERT_EQ(p.terms.size(), 4u);
    const auto& full = std::get<BinarySpec>(p.terms[0].leg);
    EXPECT_EQ(full.order(), 4u);
    EXPECT_EQ(full.signs, (std::vector<Sign>{Sign::Up, Sign::Up, Sign::Up, Sign::Down}));
    EXPECT_EQ(full.exercise_prices.back(), 100.0);
    const auto& last = std::get<BinarySpec>(p.terms[3].leg);
    EXPECT_EQ(last.order(), 1u);
    EXPECT_EQ(last.signs[0], Sign::Down);
    EXPECT_EQ(last.exercise_prices[0], b.a[0]);
    EXPECT_EQ(price_portfolio(97, 0, p, kMarket), price_bermudan_put(97, 0, c, b, kMarket));
}

TEST(Bermudan, Validation) {
    EXPECT_THROW(bermudan_boundaries(BermudanPut{0, {1.0}}, kMarket), ValidationError);
    EXPECT_THROW(bermudan_boundaries(BermudanPut{100, {}}, kMarket), ValidationError);
    try {
        BermudanPut{100, {1.0, 0.5}}.validate();
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.field(), "exercise_dates");
    }
}

// ---- Extendable call ----------------------------------------------------

TEST(Extendable, NoExtensionIsEuropean) {
    const ExtendableCall c{{1.0}, {100}, {}};
    EXPECT_TRUE(extendable_boundaries(c, kMarket).a.empty());
    EXPECT_NEAR(price_extendable_call(100, 0, c, kMarket), 10.45058357218556678, 1e-12);
}

TEST(Extendable, OneExtensionRootsAgainstBlackScholes) {
    // Same strikes, premium 2, one year per leg.
    const ExtendableCall c{{1.0, 2.0}, {100, 100}, {2}};
    const auto b = extendable_boundaries(c, kMarket);
    const double a = b.a[0];
    EXPECT_LE(std::abs(bs(a, 100, 1.0, kMarket, true) - 2.0), 1e-10 * 100);
    EXPECT_LT(bs(a - 0.01, 100, 1.0, kMarket, true), 2.0);
    EXPECT_GT(bs(a + 0.01, 100, 1.0, kMarket, true), 2.0);
    // With q = 0, C(x) - 2 - (x - 100) = P(x) + 100(1 - e^{-r}) - 2 > 0:
    // extending always beats exercising, so there is no upper boundary.
    EXPECT_TRUE(std::isinf(b.b[0]));

    // With a dividend yield the upper root exists.
    const auto bd = extendable_boundaries(c, kDividend);
    EXPECT_LT(bd.a[0], 100.0);
    EXPECT_GT(bd.b[0], 100.0);
    EXPECT_LE(std::abs(bs(bd.b[0], 100, 1.0, kDividend, true) - 2.0 - (bd.b[0] - 100)), 1e-10 * 100);
    EXPECT_LE(std::abs(bs(bd.a[0], 100, 1.0, kDividend, true) - 2.0), 1e-10 * 100);
}

TEST(Extendable, OneExtensionPortfolioHasFourTerms) {
    const ExtendableCall c{{1.0, 2.0}, {100, 110}, {3}};
    const auto b = extendable_boundaries(c, kDividend);
    const Portfolio p = extendable_portfolio(c, b, 0.0);
    ASSERT_EQ(p.terms.size(), 4u);
    auto spec = [&](std::size_t i) { return std::get<BinarySpec>(p.terms[i].leg); };
    // Q_{a K1}^{++} - Q_{b K1}^{++} + Q_b^+(K0 - C0) - C0 B_a^+
    EXPECT_EQ(p.terms[0].weight, 1.0);
    EXPECT_EQ(spec(0).exercise_prices, (std::vector<double>{b.a[0], 110}));
    EXPECT_EQ(spec(0).kind, BinaryKind::q(110));
    EXPECT_EQ(p.terms[1].weight, -1.0);
    EXPECT_EQ(spec(1).exercise_prices, (std::vector<double>{b.b[0], 110}));
    EXPECT_EQ(p.terms[2].weight, 1.0);
    EXPECT_EQ(spec(2).kind, BinaryKind::q(97));
    EXPECT_EQ(spec(2).exercise_prices, (std::vector<double>{b.b[0]}));
    EXPECT_EQ(p.terms[3].weight, -3.0);
    EXPECT_EQ(spec(3).kind, BinaryKind::bond());
    EXPECT_EQ(spec(3).exercise_prices, (std::vector<double>{b.a[0]}));
    for (std::size_t i = 0; i < 4; ++i)
        for (Sign s : spec(i).signs) EXPECT_EQ(s, Sign::Up);
}

TEST(Extendable, ZeroPremiumNeverOptimal) {
    EXPECT_THROW(extendable_boundaries(ExtendableCall{{1.0, 2.0}, {100, 100}, {0}}, kMarket), ExtensionNeverOptimal);
    // A premium above the continuation value at the strike is just as bad.
    EXPECT_THROW(extendable_boundaries(ExtendableCall{{1.0, 2.0}, {100, 100}, {50}}, kMarket), ExtensionNeverOptimal);
}

TEST(Extendable, ValueMatchingAndOrdering) {
    const ExtendableCall c{{0.5, 1.0, 1.5}, {100, 105, 110}, {3, 2}};
    const auto b = extendable_boundaries(c, kDividend);
    for (std::size_t k = 0; k < 2; ++k) {
        const double K = c.strikes[k];
        EXPECT_LT(b.a[k], K);
        EXPECT_GT(b.b[k], K);
        // Continuation just after T_k, evaluated at T_k.
        const double at_a = price_extendable_call(b.a[k], c.decision_dates[k], c, b, kDividend);
        const double at_b = price_extendable_call(b.b[k], c.decision_dates[k], c, b, kDividend);
        EXPECT_LE(std::abs(at_a - c.extension_premiums[k]), 1e-10 * K) << k;
        EXPECT_LE(std::abs(at_b - c.extension_premiums[k] - (b.b[k] - K)), 1e-10 * K) << k;
    }
}

TEST(Extendable, DeltaBetweenZeroAndOne) {
    const ExtendableCall c{{0.5, 1.0, 1.5}, {100, 105, 110}, {3, 2}};
    for (const MarketParams& m : {kMarket, kDividend}) {
        const auto b = extendable_boundaries(c, m);
        // Deep in the money with q = 0 the delta is 1 to machine precision.
        const double ceiling = m.q > 0.0 ? 1.0 : 1.0 + 1e-9;
        for (double x = 25.0; x <= 400.0; x *= 1.15) {
            const double d = delta([&](double s) { return price_extendable_call(s, 0, c, b, m); }, x);
            EXPECT_GT(d, 0.0) << x;
            EXPECT_LT(d, ceiling) << x;
        }
    }
}

TEST(Extendable, WorthAtLeastTheUnextendedCall) {
    const ExtendableCall c{{0.5, 1.0, 1.5}, {100, 105, 110}, {3, 2}};
    for (double x : {70.0, 100.0, 130.0})
        EXPECT_GE(price_extendable_call(x, 0, c, kDividend), bs(x, 100, 0.5, kDividend, true) - 1e-9);
}

TEST(Extendable, ContinuousIntoFirstDecisionDate) {
    const ExtendableCall c{{0.5, 1.0, 1.5}, {100, 105, 110}, {3, 2}};
    const auto b = extendable_boundaries(c, kDividend);
    for (double x : {80.0, 99.0, 115.0}) {
        const double after = price_extendable_call(x, 0.5, c, b, kDividend);
        const double at_date = std::max(after - 3.0, std::max(x - 100.0, 0.0));
        const double before = price_extendable_call(x, 0.5 - 1e-6, c, b, kDividend);
        EXPECT_NEAR(before, at_date, 1e-4 * std::max(1.0, at_date)) << x;
    }
}

TEST(Extendable, Validation) {
    try {
        ExtendableCall{{1.0, 2.0}, {100}, {1}}.validate();
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.field(), "strikes");
    }
    EXPECT_THROW((ExtendableCall{{1.0, 2.0}, {100, 100}, {-1}}.validate()), ValidationError);
    EXPECT_THROW((ExtendableCall{{1.0, 2.0}, {100, 100}, {}}.validate()), DimensionMismatch);
}

// ---- Twice-shout call ---------------------------------------------------

TEST(Shout, GExamples) {
    EXPECT_NEAR(shout_g(0.0, 1.0, kMarket), kG, 1e-15);
    // At-the-money call per unit of spot.
    EXPECT_NEAR(shout_g(2.0, 3.0, kMarket), bs(100, 100, 1.0, kMarket, true) / 100, 1e-15);
    const MarketParams flat{0.0, 0.0, 0.3};
    EXPECT_NEAR(shout_g(0, 2, flat), norm_cdf(0.15 * std::sqrt(2.0)) - norm_cdf(-0.15 * std::sqrt(2.0)), 1e-15);
    EXPECT_GT(shout_g(0, 2, flat), 0.0);
    EXPECT_NEAR(shout_g(0, 1, MarketParams{0.03, 0.03, 1e-9}), 0.0, 1e-9);
}

TEST(Shout, G1LimitsAndSmoke) {
    const MarketParams flat{0.0, 0.0, 0.3};
    const double g1 = shout_g1(0.5, 1.0, 1.5, flat);
    EXPECT_TRUE(std::isfinite(g1));
    EXPECT_GT(g1, 0.0);
    // As T1 -> T0 the first indicator is a fair coin independent of the rest.
    EXPECT_NEAR(shout_g1(0.5, 0.5 + 1e-8, 1.5, kMarket), 0.5 * shout_g(0.5, 1.5, kMarket), 1e-4);
}

TEST(Shout, DominanceChain) {
    const TwiceShoutCall c{100, {0.5, 1.0}, 1.5};
    for (const MarketParams& m : {kMarket, kDividend, MarketParams{0.01, 0.04, 0.35}}) {
        for (double x : {50.0, 80.0, 100.0, 120.0, 200.0}) {
            const double euro = bs(x, 100, 1.5, m, true);
            const double once = price_once_shout_call(x, 0, 100, 1.0, 1.5, m);
            const double twice = price_twice_shout_call(x, 0, c, m);
            EXPECT_GE(once - euro, -1e-9) << x;
            EXPECT_GE(twice - once, -1e-9) << x;
        }
    }
}

TEST(Shout, DeterministicLimit) {
    const TwiceShoutCall c{100, {0.5, 1.0}, 1.5};
    const MarketParams still{0.0, 0.0, 1e-6};
    EXPECT_NEAR(price_twice_shout_call(110, 0, c, still), 10.0, 1e-4);
    EXPECT_NEAR(price_twice_shout_call(90, 0, c, still), 0.0, 1e-4);
}

TEST(Shout, ContinuousIntoFirstShoutDate) {
    const TwiceShoutCall c{100, {0.5, 1.0}, 1.5};
    for (const MarketParams& m : {kMarket, kDividend}) {
        for (double x : {70.0, 95.0}) {
            const double at_date = price_once_shout_call(x, 0.5, 100, 1.0, 1.5, m);
            EXPECT_NEAR(price_twice_shout_call(x, 0.5 - 1e-6, c, m) / at_date, 1.0, 1e-4) << x;
        }
        for (double x : {105.0, 140.0}) {
            const double at_date = shout_G(0.5, 1.0, 1.5, m) * x - 100 * std::exp(-m.r * 1.0);
            EXPECT_NEAR(price_twice_shout_call(x, 0.5 - 1e-6, c, m) / at_date, 1.0, 1e-4) << x;
        }
    }
}

TEST(Shout, PortfolioHasFiveTerms) {
    const TwiceShoutCall c{100, {0.5, 1.0}, 1.5};
    const Portfolio p = twice_shout_portfolio(c, kMarket);
    ASSERT_EQ(p.terms.size(), 5u);
    EXPECT_EQ(std::get<BinarySpec>(p.terms[0].leg).signs, (std::vector<Sign>{Sign::Down, Sign::Down, Sign::Up}));
    EXPECT_NEAR(p.terms[1].weight, std::exp(-0.05 * 0.5), 1e-15);
    EXPECT_NEAR(p.terms[2].weight, shout_g(1.0, 1.5, kMarket), 1e-15);
    EXPECT_NEAR(p.terms[4].weight, -100 * std::exp(-0.05 * 1.0), 1e-12);
    EXPECT_EQ(price_portfolio(100, 0, p, kMarket), price_twice_shout_call(100, 0, c, kMarket));
}

TEST(Shout, Validation) {
    EXPECT_THROW((TwiceShoutCall{100, {1.0, 0.5}, 1.5}.validate()), ValidationError);
    EXPECT_THROW((TwiceShoutCall{100, {0.5, 1.0}, 1.0}.validate()), ValidationError);
    EXPECT_THROW((TwiceShoutCall{-1, {0.5, 1.0}, 1.5}.validate()), ValidationError);
    EXPECT_THROW(price_twice_shout_call(100, 0.5, TwiceShoutCall{100, {0.5, 1.0}, 1.5}, kMarket),
                 TimeAfterFirstExpiry);
}

// ---- PDE residual -------------------------------------------------------

TEST(Pde, ExoticPricesSatisfyTheOperator) {
    const BermudanPut berm{100, {0.5, 0.75, 1.0}};
    const auto bb = bermudan_boundaries(berm, kDividend);
    const ExtendableCall ext{{0.5, 1.0, 1.5}, {100, 105, 110}, {3, 2}};
    const auto eb = extendable_boundaries(ext, kDividend);
    const TwiceShoutCall shout{100, {0.5, 1.0}, 1.5};
    const std::vector<std::function<double(double, double)>> pricers = {
        [&](double x, double t) { return price_bermudan_put(x, t, berm, bb, kDividend); },
        [&](double x, double t) { return price_extendable_call(x, t, ext, eb, kDividend); },
        [&](double x, double t) { return price_twice_shout_call(x, t, shout, kDividend); },
        [&](double x, double t) { return price_once_shout_call(x, t, 100, 1.0, 1.5, kDividend); },
    };
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> spot(70, 140), time(0.0, 0.45);
    for (const auto& v : pricers) {
        for (int i = 0; i < 5; ++i) {
            const double x = spot(rng), t = time(rng);
            const auto res = test_support::pde_residual(v, x, t, kDividend);
            EXPECT_LE(res.relative(), 1e-4) << "x=" << x << " t=" << t;
        }
    }
}
