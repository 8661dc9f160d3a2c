#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "hob/binaries/spec.hpp"
#include "hob/exotics/bermudan.hpp"
#include "hob/exotics/extendable.hpp"
#include "hob/exotics/shout.hpp"
#include "hob/replication/json_io.hpp"
#include "hob/replication/portfolio.hpp"

namespace hob {

inline constexpr int kContractVersion = 1;

struct Valuation {
    double spot = 0.0;
    double time = 0.0;
};

/// raw_binary contracts carry a bare BinarySpec.
using Contract = std::variant<BermudanPut, ExtendableCall, TwiceShoutCall, BinarySpec, Portfolio>;

/// {"version": 1, "market": {"r", "q", "sigma"}, "valuation": {"spot", "time"},
///  "contract": {"type": ..., ...}}
struct ContractFile {
    MarketParams market;
    Valuation valuation;
    Contract contract;
};

/// "bermudan_put", "extendable_call", "twice_shout_call", "raw_binary" or
/// "portfolio".
std::string contract_type(const Contract& c);

/// Every date in the contract must be strictly after the valuation time.
/// ValidationError::field() carries the dotted path of the offending input.
ContractFile contract_from_json(const Json& j);
/// Throws ParseError on malformed JSON.
ContractFile parse_contract(std::string_view text);
ContractFile load_contract(const std::filesystem::path& path);

Json to_json(const Contract& c);
Json to_json(const ContractFile& f);

}  // namespace hob
