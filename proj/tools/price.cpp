#include "hob/cli/price.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "hob/binaries/pricing.hpp"
#include "hob/errors.hpp"
#include "hob/oracle/finite_difference.hpp"
#include "hob/oracle/lattice.hpp"
#include "hob/oracle/monte_carlo.hpp"

namespace hob {

namespace {

std::uint64_t parse_count(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || text.front() == '-')
        throw ValidationError(what + " must be a nonnegative integer, got \"" + text + "\"", "--oracle");
    return v;
}

struct ClosedForm {
    std::function<double(double)> price;  // spot -> price at the valuation time
    Json boundaries;                      // null when not applicable
    std::function<Portfolio()> portfolio;
};

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

ClosedForm closed_form(const ContractFile& f, double tol) {
    const double t = f.valuation.time;
    const MarketParams m = f.market;
    ClosedForm out;
    if (const auto* c = std::get_if<BermudanPut>(&f.contract)) {
        const auto b = bermudan_boundaries(*c, m, tol);
        out.price = [=](double x) { return price_bermudan_put(x, t, *c, b, m, tol); };
        out.boundaries = {{"a", b.a}};
        out.portfolio = [=] { return bermudan_portfolio(*c, b, t); };
    } else if (const auto* e = std::get_if<ExtendableCall>(&f.contract)) {
        const auto b = extendable_boundaries(*e, m, tol);
        out.price = [=](double x) { return price_extendable_call(x, t, *e, b, m, tol); };
        Json upper = Json::array();
        for (double v : b.b) upper.push_back(finite_or_null(v));
        out.boundaries = {{"a", b.a}, {"b", upper}};
        out.portfolio = [=] { return extendable_portfolio(*e, b, t); };
    } else if (const auto* s = std::get_if<TwiceShoutCall>(&f.contract)) {
        const Portfolio p = twice_shout_portfolio(*s, m, tol);
        out.price = [=](double x) { return price_portfolio(x, t, p, m, tol); };
        out.portfolio = [=] { return p; };
    } else if (const auto* spec = std::get_if<BinarySpec>(&f.contract)) {
        out.price = [=](double x) { return price_binary(x, t, *spec, m, tol); };
        out.portfolio = [=] {
            Portfolio p;
            p.add(1.0, *spec);
            return p;
        };
    } else {
        const Portfolio p = std::get<Portfolio>(f.contract);
        out.price = [=](double x) { return price_portfolio(x, t, p, m, tol); };
        out.portfolio = [=] { return p; };
    }
    return out;
}

Json run_oracle(const ContractFile& f, const OracleRequest& req, const ClosedForm& cf, double price) {
    const double x = f.valuation.spot, t = f.valuation.time;
    Json j;
    if (req.kind == OracleRequest::Kind::Mc) {
        const McConfig cfg{req.paths, req.seed};
        const McEstimate e = std::holds_alternative<TwiceShoutCall>(f.contract)
                                 ? mc_twice_shout(x, t, std::get<TwiceShoutCall>(f.contract), f.market, cfg)
                                 : mc_price_portfolio(x, t, cf.portfolio(), f.market, cfg);
        j = {{"name", "monte_carlo"},
             {"paths", req.paths},
             {"seed", req.seed},
             {"estimate", e.mean},
             {"std_error", e.std_error}};
    } else if (const auto* c = std::get_if<BermudanPut>(&f.contract)) {
        const LatticeEstimate e = lattice_bermudan(x, t, *c, f.market, req.n);
        // First-order convergence: the fine/coarse gap bounds the remaining error.
        j = {{"name", "lattice"},
             {"steps", e.steps},
             {"estimate", e.value},
             {"tolerance", std::abs(e.fine - e.coarse)}};
    } else if (const auto* c = std::get_if<ExtendableCall>(&f.contract)) {
        if (req.n < 100) throw ValidationError("grid oracle needs n >= 100", "--oracle");
        auto solve = [&](int n) { return fd_extendable(x, t, *c, f.market, GridConfig{n, std::max(50, n / 2)}); };
        const double fine = solve(req.n);
        const double coarse = solve(req.n / 2);
        j = {{"name", "finite_difference"},
             {"n_space", req.n},
             {"estimate", fine},
             {"tolerance", std::abs(fine - coarse)}};
    } else {
        throw ValidationError("grid oracle is available for bermudan_put and extendable_call only", "--oracle");
    }
    j["difference"] = j["estimate"].get<double>() - price;
    return j;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

OracleRequest parse_oracle(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    OracleRequest req;
    if (name == "mc") {
        const auto second = rest.find(':');
        if (colon == std::string::npos || second == std::string::npos)
            throw ValidationError("expected mc:<paths>:<seed>", "--oracle");
        req.kind = OracleRequest::Kind::Mc;
        req.paths = parse_count(rest.substr(0, second), "paths");
        req.seed = parse_count(rest.substr(second + 1), "seed");
        McConfig{req.paths, req.seed}.validate();
        return req;
    }
    if (name == "grid") {
        if (colon == std::string::npos) throw ValidationError("expected grid:<n>", "--oracle");
        req.kind = OracleRequest::Kind::Grid;
        const auto n = parse_count(rest, "n");
        if (n > 1000000) throw ValidationError("grid size is too large", "--oracle");
        req.n = static_cast<int>(n);
        return req;
    }
    throw ValidationError("oracle must be mc:<paths>:<seed> or grid:<n>", "--oracle");
}

double resolve_mvn_tolerance(std::optional<double> flag, const char* env_value) {
    double tol = kDefaultMvnTolerance;
    std::string field;
    if (env_value != nullptr && *env_value != '\0') {
        field = "HOB_MVN_TOL";
        try {
            std::size_t used = 0;
            tol = std::stod(env_value, &used);
            if (env_value[used] != '\0') tol = std::numeric_limits<double>::quiet_NaN();
        } catch (const std::exception&) {
            tol = std::numeric_limits<double>::quiet_NaN();
        }
    }
    if (flag) {
        field = "--tol";
        tol = *flag;
    }
    if (!(tol > 0.0) || !(tol < 1.0)) throw ValidationError("tolerance must lie in (0, 1)", field);
    return tol;
}

Json run_price(const ContractFile& file, const PriceOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const double x = file.valuation.spot;
    const ClosedForm cf = closed_form(file, options.mvn_tol);
    const double price = cf.price(x);

    Json report;
    report["version"] = kContractVersion;
    report["contract_type"] = contract_type(file.contract);
    report["valuation"] = {{"spot", x}, {"time", file.valuation.time}};
    report["market"] = {{"r", file.market.r}, {"q", file.market.q}, {"sigma", file.market.sigma}};
    report["mvn_tolerance"] = options.mvn_tol;
    report["closed_form_price"] = price;
    if (options.delta) {
        const double h = 1e-4 * x;
        report["delta"] = (cf.price(x + h) - cf.price(x - h)) / (2.0 * h);
    }
    if (!cf.boundaries.is_null()) report["boundaries"] = cf.boundaries;
    if (options.emit_portfolio) report["portfolio"] = to_json(cf.portfolio());
    const double closed_ms = elapsed_ms(start);

    if (options.oracle) {
        const auto oracle_start = std::chrono::steady_clock::now();
        report["oracle"] = run_oracle(file, *options.oracle, cf, price);
        if (options.timing) report["timing_ms"]["oracle"] = elapsed_ms(oracle_start);
    }
    if (options.timing) report["timing_ms"]["closed_form"] = closed_ms;
    return report;
}

}  // namespace hob
