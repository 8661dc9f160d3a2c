#include "hob/replication/json_io.hpp"

#include <cmath>

#include "hob/errors.hpp"

namespace hob {

namespace json_fields {

std::string join(const std::string& path, const std::string& key) {
    if (key.empty()) return path;
    return path.empty() ? key : path + "." + key;
}

const Json& require(const Json& object, const std::string& key, const std::string& path) {
    if (!object.is_object()) throw ValidationError("expected an object", path);
    const auto it = object.find(key);
    if (it == object.end()) throw ValidationError("missing field", join(path, key));
    return *it;
}

namespace {

double as_number(const Json& v, const std::string& field) {
    if (!v.is_number()) throw ValidationError("expected a number", field);
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ValidationError("expected a finite number", field);
    return d;
}

}  // namespace

double number(const Json& object, const std::string& key, const std::string& path) {
    return as_number(require(object, key, path), join(path, key));
}

std::string string(const Json& object, const std::string& key, const std::string& path) {
    const Json& v = require(object, key, path);
    if (!v.is_string()) throw ValidationError("expected a string", join(path, key));
    return v.get<std::string>();
}

std::vector<double> numbers(const Json& object, const std::string& key, const std::string& path) {
    const Json& v = require(object, key, path);
    const std::string field = join(path, key);
    if (!v.is_array()) throw ValidationError("expected an array of numbers", field);
    std::vector<double> out;
    for (const Json& e : v) out.push_back(as_number(e, field));
    return out;
}

}  // namespace json_fields

using namespace json_fields;

namespace {

Sign sign_from(const Json& v, const std::string& field) {
    if (v == "+") return Sign::Up;
    if (v == "-") return Sign::Down;
    throw ValidationError("sign must be \"+\" or \"-\"", field);
}

// Re-raise a domain validation failure with the JSON path attached.
template <class F>
auto with_path(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const ValidationError& e) {
        throw ValidationError(e.what(), join(path, e.field()));
    }
}

}  // namespace

Json to_json(Sign s) { return s == Sign::Up ? "+" : "-"; }

Json to_json(const BinarySpec& spec) {
    Json j;
    j["type"] = "binary";
    switch (spec.kind.type) {
        case BinaryKind::Type::Asset: j["kind"] = "asset"; break;
        case BinaryKind::Type::Bond: j["kind"] = "bond"; break;
        case BinaryKind::Type::Q:
            j["kind"] = "q";
            j["strike"] = spec.kind.strike;
            break;
    }
    j["signs"] = Json::array();
    for (Sign s : spec.signs) j["signs"].push_back(to_json(s));
    j["exercise_prices"] = spec.exercise_prices;
    j["expiries"] = spec.expiries;
    return j;
}

Json to_json(const Portfolio& p) {
    Json terms = Json::array();
    for (const PortfolioTerm& term : p.terms) {
        Json leg;
        if (const auto* b = std::get_if<BinarySpec>(&term.leg)) {
            leg = to_json(*b);
        } else if (const auto* c = std::get_if<CashLeg>(&term.leg)) {
            leg = {{"type", "cash"}, {"amount", c->amount}, {"pay_date", c->pay_date}};
        } else {
            leg = {{"type", "asset_forward"}, {"pay_date", std::get<AssetForwardLeg>(term.leg).pay_date}};
        }
        terms.push_back({{"weight", term.weight}, {"leg", leg}});
    }
    return {{"type", "portfolio"}, {"terms", terms}};
}

BinarySpec binary_from_json(const Json& j, const std::string& path) {
    BinarySpec spec;
    const std::string kind = string(j, "kind", path);
    if (kind == "asset") {
        spec.kind = BinaryKind::asset();
    } else if (kind == "bond") {
        spec.kind = BinaryKind::bond();
    } else if (kind == "q") {
        spec.kind = BinaryKind::q(number(j, "strike", path));
    } else {
        throw ValidationError("kind must be asset, bond or q", join(path, "kind"));
    }
    const Json& signs = require(j, "signs", path);
    if (!signs.is_array()) throw ValidationError("expected an array of signs", join(path, "signs"));
    for (const Json& s : signs) spec.signs.push_back(sign_from(s, join(path, "signs")));
    spec.exercise_prices = numbers(j, "exercise_prices", path);
    spec.expiries = numbers(j, "expiries", path);
    with_path(path, [&] {
        spec.validate();
        return 0;
    });
    return spec;
}

Portfolio portfolio_from_json(const Json& j, const std::string& path) {
    const Json& terms = require(j, "terms", path);
    if (!terms.is_array()) throw ValidationError("expected an array of terms", join(path, "terms"));
    Portfolio p;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string term_path = join(path, "terms[" + std::to_string(i) + "]");
        const double weight = number(terms[i], "weight", term_path);
        const Json& leg = require(terms[i], "leg", term_path);
        const std::string leg_path = join(term_path, "leg");
        const std::string type = string(leg, "type", leg_path);
        if (type == "binary") {
            p.add(weight, binary_from_json(leg, leg_path));
        } else if (type == "cash") {
            p.add(weight, CashLeg{number(leg, "amount", leg_path), number(leg, "pay_date", leg_path)});
        } else if (type == "asset_forward") {
            p.add(weight, AssetForwardLeg{number(leg, "pay_date", leg_path)});
        } else {
            throw ValidationError("leg type must be binary, cash or asset_forward", join(leg_path, "type"));
        }
    }
    return p;
}

}  // namespace hob
