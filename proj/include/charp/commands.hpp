#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "charp/ringfile.hpp"

namespace charp {

using Json = nlohmann::json;

inline constexpr const char* kReportSchema = "charp-report/1";

const std::vector<std::string>& command_names();

/// Runs one command against a parsed ring file. Every report carries
/// "schema", "command", "ring", "checks" and "passed"; failed theorem checks
/// are reported, not thrown.
///
/// Options: "e" ("1..3", 2 or [1, 2]), "i", "gamma", "primes" (names or
/// generator text), "module", "c", "emax".
Json run_command(const RingFile& rf, const std::string& command, const Json& options);

/// "a..b", "a" or "a,b,c".
std::vector<int> parse_e_range(const std::string& text);

/// The report's "table" as CSV.
std::string report_to_csv(const Json& report);

}  // namespace charp
