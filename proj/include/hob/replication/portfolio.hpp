#pragma once

#include <map>
#include <span>
#include <variant>
#include <vector>

#include "hob/binaries/spec.hpp"
#include "hob/numerics/mvn.hpp"

namespace hob {

/// `amount` units of cash paid at `pay_date`.
struct CashLeg {
    double amount = 0.0;
    double pay_date = 0.0;
    friend bool operator==(const CashLeg&, const CashLeg&) = default;
};

/// One unit of the asset delivered at `pay_date`.
struct AssetForwardLeg {
    double pay_date = 0.0;
    friend bool operator==(const AssetForwardLeg&, const AssetForwardLeg&) = default;
};

using Leg = std::variant<BinarySpec, CashLeg, AssetForwardLeg>;

struct PortfolioTerm {
    double weight = 0.0;
    Leg leg;
    friend bool operator==(const PortfolioTerm&, const PortfolioTerm&) = default;
};

/// Flat weighted sum of legs. Binaries are always fully expanded.
struct Portfolio {
    std::vector<PortfolioTerm> terms;

    void add(double weight, Leg leg) { terms.push_back({weight, std::move(leg)}); }
    void append(const Portfolio& other, double scale = 1.0);

    /// Every date any leg looks at, ascending and without duplicates.
    std::vector<double> dates() const;

    friend bool operator==(const Portfolio&, const Portfolio&) = default;
};

/// Last date a leg depends on (its payment date).
double final_date(const Leg& leg);

/// Closed-form value of one unit of the leg. Throws TimeAfterFirstExpiry if
/// t is not before the leg's first date.
double price_leg(double x, double t, const Leg& leg, const MarketParams& params,
                 double mvn_tol = kDefaultMvnTolerance);

/// Sum of weight * leg price; 0 for an empty portfolio.
double price_portfolio(double x, double t, const Portfolio& p, const MarketParams& params,
                       double mvn_tol = kDefaultMvnTolerance);

/// Payoff of one unit of the leg at its own final date given spots at each
/// of its dates. Indicators are strict: s x > s xi.
double leg_payoff(const Leg& leg, const std::map<double, double>& path_values);

/// Realised cash at the portfolio's latest date: each leg's payoff, carried
/// from its own final date to the latest one at rate r. Throws MissingDate
/// when `path_values` lacks a date the portfolio needs.
double expiry_payoff(const Portfolio& p, const std::map<double, double>& path_values, double r = 0.0);

/// Portfolio compiled against its own date grid for repeated evaluation on
/// simulated paths.
class PayoffEvaluator {
public:
    explicit PayoffEvaluator(const Portfolio& p);

    const std::vector<double>& dates() const noexcept { return dates_; }

    /// Sum over legs of weight * payoff * e^{-r (T_leg - t)} for spots given
    /// on dates(), i.e. the path's contribution to the price at t.
    double discounted(std::span<const double> spots, double t, double r) const;

private:
    struct Compiled {
        double weight = 0.0;
        BinaryKind::Type type = BinaryKind::Type::Bond;
        double strike = 0.0;
        std::vector<std::size_t> index;  // into dates_
        std::vector<double> signs;
        std::vector<double> prices;
        double final_date = 0.0;
        double amount = 1.0;  // cash legs
        bool is_cash = false;
        bool is_forward = false;
    };
    std::vector<double> dates_;
    std::vector<Compiled> legs_;
};

}  // namespace hob
