// Command-line front end: argument parsing, datum files, JSON reports and CSV figure data.
#ifndef RODBREAK_CLI_HPP
#define RODBREAK_CLI_HPP

#include <iosfwd>

#include <json.hpp>

#include "rodbreak/common.hpp"
#include "rodbreak/datum.hpp"

namespace rodbreak::cli {

/// Runs one command.  Reports go to `out`, structured errors to `err`.
/// Exit status: 0 success, 1 internal failure, 2 invalid input or domain error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Extended reals serialise as numbers, or the strings "-inf" / "+inf".
nlohmann::json to_json(const Extended& v);

/// {"domain": "circle"|"line", and exactly one of
///  "family": {"name": ..., "params": {...}}, "fourier": [[re, im], ...], "samples": [...]}
InitialDatum parse_datum(const nlohmann::json& j);

}  // namespace rodbreak::cli

#endif
