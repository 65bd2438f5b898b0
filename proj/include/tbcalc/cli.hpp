#pragma once

#include "tbcalc/model.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tbcalc {

enum class Command { IndexSet, Compose, Parametrix, Analyze, RelIndex, FtVerify };

// Everything a command needs, merged from --config and the flags (flags win).
struct RunConfig {
    Command command = Command::IndexSet;
    std::optional<ModelOperator> model;
    std::optional<WeightPair> weights;
    std::optional<Rational> truncation;
    SolverConfig solver;
    std::string output_path;
    std::optional<std::int64_t> seed;
    Json config = Json::object();  // the --config document, or {}
};

// "1/2", "-0.25" or "3"; UsageError otherwise.
Rational rational_arg(std::string_view text);
// Also JSON integers, decimals and {"num","den"} objects.
Rational rational_from_any(const Json& j);

// Runs the tbcalc command line. Results go to `out` (or --out), diagnostics to
// `err`. Returns the process exit code:
//   0 success, 1 negative verdict, 2 usage or parse error, 3 domain, forbidden
//   weight or gap violation, 4 solver failure, 5 bound violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tbcalc
