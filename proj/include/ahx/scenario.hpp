#pragma once

// Scenario files, reports and the bundled example catalog.
//
// A scenario is a JSON document describing a ground algebra, named monic
// polynomials and elements, and a list of operations. Running it produces a
// report whose canonical rendering (sorted keys, 17 significant digits) is
// stable for a fixed scenario and seed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ahx/types.hpp"

namespace ahx::scenario {

using Json = nlohmann::json;

/// Sorted keys, floats as %.17g, no whitespace beyond `indent`.
std::string canonical_dump(const Json& j, int indent = -1);

/// Throws ParseError on malformed JSON.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

/// Schema check; throws ValidationError naming the offending path.
void validate(const Json& scenario);

/// Reads a tolerance profile ({"root_tol": ..., ...}); unknown keys are errors.
Tolerances tolerances_from_json(const Json& j, Tolerances base = {});
Json tolerances_to_json(const Tolerances& t);

struct RunOptions {
  std::optional<Tolerances> tolerances;  // overrides the scenario's
  std::optional<std::uint64_t> seed;     // overrides the scenario's
  /// Only run operations with these names (all when empty).
  std::vector<std::string> only;
};

/// Validates and executes. Throws ahx::Error on failure.
Json run(const Json& scenario, const RunOptions& options = {});

/// 0 ok, 2 validation or parse problems, 3 numerical failure.
int exit_code(const Error& e);

const std::vector<std::string>& example_names();
/// Throws UnknownExample.
Json generate_example(const std::string& name);

/// Human-readable rendering of a report.
std::string render_table(const Json& report);

}  // namespace ahx::scenario
