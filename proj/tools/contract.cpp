#include "hob/cli/contract.hpp"

#include <fstream>
#include <sstream>

#include "hob/errors.hpp"

namespace hob {

using namespace json_fields;

namespace {

template <class F>
void with_path(const std::string& path, F&& f) {
    try {
        f();
    } catch (const ValidationError& e) {
        throw ValidationError(e.what(), join(path, e.field()));
    }
}

void require_after(const std::vector<double>& dates, double t, const std::string& field) {
    for (double d : dates)
        if (!(d > t)) throw TimeAfterFirstExpiry("every date must be after the valuation time", field);
}

Contract contract_body(const Json& j, double t) {
    const std::string path = "contract";
    const std::string type = string(j, "type", path);
    if (type == "bermudan_put") {
        BermudanPut c{number(j, "strike", path), numbers(j, "exercise_dates", path)};
        with_path(path, [&] { c.validate(); });
        require_after(c.exercise_dates, t, "contract.exercise_dates");
        return c;
    }
    if (type == "extendable_call") {
        ExtendableCall c{numbers(j, "decision_dates", path), numbers(j, "strikes", path),
                         numbers(j, "extension_premiums", path)};
        with_path(path, [&] { c.validate(); });
        require_after(c.decision_dates, t, "contract.decision_dates");
        return c;
    }
    if (type == "twice_shout_call") {
        const auto shouts = numbers(j, "shout_dates", path);
        if (shouts.size() != 2) throw DimensionMismatch("exactly two shout dates", "contract.shout_dates");
        TwiceShoutCall c{number(j, "strike", path), {shouts[0], shouts[1]}, number(j, "final_expiry", path)};
        with_path(path, [&] { c.validate(); });
        require_after(shouts, t, "contract.shout_dates");
        return c;
    }
    if (type == "raw_binary") {
        BinarySpec spec = binary_from_json(j, path);
        require_after(spec.expiries, t, "contract.expiries");
        return spec;
    }
    if (type == "portfolio") {
        Portfolio p = portfolio_from_json(j, path);
        for (std::size_t i = 0; i < p.terms.size(); ++i) {
            const std::string leg = "contract.terms[" + std::to_string(i) + "].leg";
            if (const auto* b = std::get_if<BinarySpec>(&p.terms[i].leg))
                require_after(b->expiries, t, leg + ".expiries");
            else
                require_after({final_date(p.terms[i].leg)}, t, leg + ".pay_date");
        }
        return p;
    }
    throw ValidationError("type must be bermudan_put, extendable_call, twice_shout_call, raw_binary or portfolio",
                          "contract.type");
}

}  // namespace

std::string contract_type(const Contract& c) {
    switch (c.index()) {
        case 0: return "bermudan_put";
        case 1: return "extendable_call";
        case 2: return "twice_shout_call";
        case 3: return "raw_binary";
        default: return "portfolio";
    }
}

ContractFile contract_from_json(const Json& j) {
    if (!j.is_object()) throw ValidationError("contract file must be a JSON object", "");
    const Json& version = require(j, "version", "");
    if (version != kContractVersion)
        throw ValidationError("unsupported version; expected " + std::to_string(kContractVersion), "version");

    ContractFile f;
    const Json& market = require(j, "market", "");
    f.market = {number(market, "r", "market"), number(market, "q", "market"), number(market, "sigma", "market")};
    with_path("market", [&] { f.market.validate(); });

    const Json& valuation = require(j, "valuation", "");
    f.valuation = {number(valuation, "spot", "valuation"), number(valuation, "time", "valuation")};
    if (!(f.valuation.spot > 0.0)) throw ValidationError("spot must be positive", "valuation.spot");
    if (!(f.valuation.time >= 0.0)) throw ValidationError("time must be nonnegative", "valuation.time");

    f.contract = contract_body(require(j, "contract", ""), f.valuation.time);
    return f;
}

ContractFile parse_contract(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return contract_from_json(j);
}

ContractFile load_contract(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_contract(text.str());
}

Json to_json(const Contract& c) {
    Json j;
    if (const auto* b = std::get_if<BermudanPut>(&c)) {
        j = {{"strike", b->strike}, {"exercise_dates", b->exercise_dates}};
    } else if (const auto* e = std::get_if<ExtendableCall>(&c)) {
        j = {{"decision_dates", e->decision_dates},
             {"strikes", e->strikes},
             {"extension_premiums", e->extension_premiums}};
    } else if (const auto* s = std::get_if<TwiceShoutCall>(&c)) {
        j = {{"strike", s->strike}, {"shout_dates", s->shout_dates}, {"final_expiry", s->final_expiry}};
    } else if (const auto* spec = std::get_if<BinarySpec>(&c)) {
        j = to_json(*spec);
    } else {
        j = to_json(std::get<Portfolio>(c));
    }
    j["type"] = contract_type(c);
    return j;
}

Json to_json(const ContractFile& f) {
    return {{"version", kContractVersion},
            {"market", {{"r", f.market.r}, {"q", f.market.q}, {"sigma", f.market.sigma}}},
            {"valuation", {{"spot", f.valuation.spot}, {"time", f.valuation.time}}},
            {"contract", to_json(f.contract)}};
}

}  // namespace hob
