#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hob/replication/portfolio.hpp"

namespace hob {

using Json = nlohmann::json;

/// Field accessors that report the dotted path of whatever is missing or
/// malformed through ValidationError::field().
namespace json_fields {

const Json& require(const Json& object, const std::string& key, const std::string& path);
double number(const Json& object, const std::string& key, const std::string& path);
std::string string(const Json& object, const std::string& key, const std::string& path);
std::vector<double> numbers(const Json& object, const std::string& key, const std::string& path);
std::string join(const std::string& path, const std::string& key);

}  // namespace json_fields

Json to_json(Sign s);
Json to_json(const BinarySpec& spec);
Json to_json(const Portfolio& p);

/// `path` prefixes field names in diagnostics, e.g. "contract.terms[3].leg".
BinarySpec binary_from_json(const Json& j, const std::string& path = {});
Portfolio portfolio_from_json(const Json& j, const std::string& path = {});

}  // namespace hob
