#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "hob/cli/contract.hpp"
#include "hob/numerics/mvn.hpp"

namespace hob {

struct OracleRequest {
    enum class Kind { Mc, Grid };
    Kind kind = Kind::Mc;
    std::uint64_t paths = 0;  ///< mc
    std::uint64_t seed = 0;   ///< mc
    int n = 0;                ///< grid
};

/// "mc:<paths>:<seed>" or "grid:<n>".
OracleRequest parse_oracle(const std::string& text);

struct PriceOptions {
    std::optional<OracleRequest> oracle;
    bool emit_portfolio = false;
    bool delta = false;
    bool timing = false;
    double mvn_tol = kDefaultMvnTolerance;
};

/// --tol beats HOB_MVN_TOL beats the library default.
double resolve_mvn_tolerance(std::optional<double> flag, const char* env_value);

/// Builds the price report. Without `timing` the report depends only on its
/// inputs, byte for byte once dumped.
Json run_price(const ContractFile& file, const PriceOptions& options);

/// {"error": {"type", "message", "field"?}}
Json error_json(const std::exception& e);
/// 2 for validation and parse errors, 3 for numerical errors, 1 otherwise.
int exit_code(const std::exception& e);

/// The `hob` command line; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hob
