#include <cstdlib>
#include <ostream>

#include "CLI11.hpp"

#include "hob/cli/price.hpp"
#include "hob/errors.hpp"

namespace hob {

namespace {

std::string error_type(const std::exception& e) {
    if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
    if (dynamic_cast<const TimeAfterFirstExpiry*>(&e)) return "TimeAfterFirstExpiry";
    if (dynamic_cast<const NonIncreasingExpiries*>(&e)) return "NonIncreasingExpiries";
    if (dynamic_cast<const MissingDate*>(&e)) return "MissingDate";
    if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
    if (dynamic_cast<const NotPositiveDefinite*>(&e)) return "NotPositiveDefinite";
    if (dynamic_cast<const NonConvergent*>(&e)) return "NonConvergent";
    if (dynamic_cast<const RootNotBracketed*>(&e)) return "RootNotBracketed";
    if (dynamic_cast<const ExtensionNeverOptimal*>(&e)) return "ExtensionNeverOptimal";
    if (dynamic_cast<const NumericalError*>(&e)) return "NumericalError";
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const CLI::ParseError*>(&e)) return "UsageError";
    return "Error";
}

}  // namespace

Json error_json(const std::exception& e) {
    Json body = {{"type", error_type(e)}, {"message", e.what()}};
    if (const auto* v = dynamic_cast<const ValidationError*>(&e); v && !v->field().empty()) body["field"] = v->field();
    return {{"error", body}};
}

int exit_code(const std::exception& e) {
    if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
        dynamic_cast<const CLI::ParseError*>(&e))
        return 2;
    if (dynamic_cast<const NumericalError*>(&e)) return 3;
    return 1;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Closed-form pricing of higher-order binaries and the exotics they replicate"};
    app.require_subcommand(1);
    CLI::App* price = app.add_subcommand("price", "Price a contract file and print a JSON report");
    std::string path, oracle;
    std::optional<double> tol;
    PriceOptions options;
    price->add_option("file", path, "Contract JSON file")->required();
    price->add_option("--oracle", oracle, "Independent check: mc:<paths>:<seed> or grid:<n>");
    price->add_flag("--emit-portfolio", options.emit_portfolio, "Include the replication portfolio");
    price->add_flag("--delta", options.delta, "Include a central-difference delta");
    price->add_option("--tol", tol, "Multivariate normal tolerance (overrides HOB_MVN_TOL)");
    price->add_flag("--timing", options.timing, "Include wall-clock timings");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << error_json(e).dump() << '\n';
        return 2;
    }

    try {
        options.mvn_tol = resolve_mvn_tolerance(tol, std::getenv("HOB_MVN_TOL"));
        if (!oracle.empty()) options.oracle = parse_oracle(oracle);
        const ContractFile file = load_contract(path);
        out << run_price(file, options).dump(2) << '\n';
        return 0;
    } catch (const std::exception& e) {
        err << error_json(e).dump() << '\n';
        return exit_code(e);
    }
}

}  // namespace hob
