#include "hob/replication/portfolio.hpp"

#include <algorithm>
#include <cmath>

#include "hob/binaries/pricing.hpp"
#include "hob/errors.hpp"

namespace hob {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double spot_at(const std::map<double, double>& path, double date) {
    const auto it = path.find(date);
    if (it == path.end()) throw MissingDate("no spot for date " + std::to_string(date), "path_values");
    return it->second;
}

double binary_payoff(const BinarySpec& b, const std::map<double, double>& path) {
    b.validate();
    double x = 0.0;
    for (std::size_t i = 0; i < b.order(); ++i) {
        x = spot_at(path, b.expiries[i]);
        const double s = sign_value(b.signs[i]);
        if (!(s * x > s * b.exercise_prices[i])) return 0.0;
    }
    switch (b.kind.type) {
        case BinaryKind::Type::Asset: return x;
        case BinaryKind::Type::Bond: return 1.0;
        case BinaryKind::Type::Q: return sign_value(b.signs.back()) * (x - b.kind.strike);
    }
    return 0.0;
}

}  // namespace

void Portfolio::append(const Portfolio& other, double scale) {
    for (const PortfolioTerm& term : other.terms) terms.push_back({scale * term.weight, term.leg});
}

double final_date(const Leg& leg) {
    return std::visit(overloaded{[](const BinarySpec& b) { return b.expiries.back(); },
                                 [](const CashLeg& c) { return c.pay_date; },
                                 [](const AssetForwardLeg& f) { return f.pay_date; }},
                      leg);
}

std::vector<double> Portfolio::dates() const {
    std::vector<double> out;
    for (const PortfolioTerm& term : terms) {
        if (const auto* b = std::get_if<BinarySpec>(&term.leg))
            out.insert(out.end(), b->expiries.begin(), b->expiries.end());
        else
            out.push_back(final_date(term.leg));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double price_leg(double x, double t, const Leg& leg, const MarketParams& params, double mvn_tol) {
    auto check_pay_date = [t](double pay_date) {
        if (!std::isfinite(pay_date)) throw ValidationError("pay_date must be finite", "pay_date");
        if (!(t < pay_date)) throw TimeAfterFirstExpiry("valuation time is not before the pay date", "time");
    };
    return std::visit(
        overloaded{[&](const BinarySpec& b) { return price_binary(x, t, b, params, mvn_tol); },
                   [&](const CashLeg& c) {
                       check_pay_date(c.pay_date);
                       return c.amount * std::exp(-params.r * (c.pay_date - t));
                   },
                   [&](const AssetForwardLeg& f) {
                       check_pay_date(f.pay_date);
                       return x * std::exp(-params.q * (f.pay_date - t));
                   }},
        leg);
}

double price_portfolio(double x, double t, const Portfolio& p, const MarketParams& params, double mvn_tol) {
    double total = 0.0;
    for (const PortfolioTerm& term : p.terms) {
        if (!std::isfinite(term.weight)) throw ValidationError("weight must be finite", "weight");
        if (term.weight == 0.0) continue;
        total += term.weight * price_leg(x, t, term.leg, params, mvn_tol);
    }
    return total;
}

double leg_payoff(const Leg& leg, const std::map<double, double>& path_values) {
    return std::visit(overloaded{[&](const BinarySpec& b) { return binary_payoff(b, path_values); },
                                 [&](const CashLeg& c) { return c.amount; },
                                 [&](const AssetForwardLeg& f) { return spot_at(path_values, f.pay_date); }},
                      leg);
}

double expiry_payoff(const Portfolio& p, const std::map<double, double>& path_values, double r) {
    if (p.terms.empty()) return 0.0;
    double latest = final_date(p.terms.front().leg);
    for (const PortfolioTerm& term : p.terms) latest = std::max(latest, final_date(term.leg));
    double total = 0.0;
    for (const PortfolioTerm& term : p.terms)
        total += term.weight * leg_payoff(term.leg, path_values) * std::exp(r * (latest - final_date(term.leg)));
    return total;
}

PayoffEvaluator::PayoffEvaluator(const Portfolio& p) : dates_(p.dates()) {
    auto index_of = [this](double date) {
        return static_cast<std::size_t>(std::lower_bound(dates_.begin(), dates_.end(), date) - dates_.begin());
    };
    for (const PortfolioTerm& term : p.terms) {
        Compiled c;
        c.weight = term.weight;
        c.final_date = final_date(term.leg);
        if (const auto* b = std::get_if<BinarySpec>(&term.leg)) {
            b->validate();
            c.type = b->kind.type;
            c.strike = b->kind.strike;
            for (std::size_t i = 0; i < b->order(); ++i) {
                c.index.push_back(index_of(b->expiries[i]));
                c.signs.push_back(sign_value(b->signs[i]));
                c.prices.push_back(b->exercise_prices[i]);
            }
        } else if (const auto* cash = std::get_if<CashLeg>(&term.leg)) {
            c.is_cash = true;
            c.amount = cash->amount;
        } else {
            c.is_forward = true;
            c.index.push_back(index_of(c.final_date));
        }
        legs_.push_back(std::move(c));
    }
}

double PayoffEvaluator::discounted(std::span<const double> spots, double t, double r) const {
    if (spots.size() != dates_.size()) throw DimensionMismatch("one spot per portfolio date", "spots");
    double total = 0.0;
    for (const Compiled& c : legs_) {
        double value;
        if (c.is_cash) {
            value = c.amount;
        } else if (c.is_forward) {
            value = spots[c.index[0]];
        } else {
            bool alive = true;
            for (std::size_t i = 0; i < c.index.size() && alive; ++i)
                alive = c.signs[i] * spots[c.index[i]] > c.signs[i] * c.prices[i];
            if (!alive) continue;
            const double last = spots[c.index.back()];
            value = c.type == BinaryKind::Type::Asset ? last
                    : c.type == BinaryKind::Type::Bond ? 1.0
                                                       : c.signs.back() * (last - c.strike);
        }
        total += c.weight * value * std::exp(-r * (c.final_date - t));
    }
    return total;
}

}  // namespace hob
