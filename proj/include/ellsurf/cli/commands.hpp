#ifndef ELLSURF_CLI_COMMANDS_HPP
#define ELLSURF_CLI_COMMANDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ellsurf/cli/manifest.hpp"

namespace ellsurf::cli {

using nlohmann::json;

enum ExitCode { kSuccess = 0, kHypothesisFailure = 1, kInputError = 2 };

struct Options {
    std::optional<int> n_max;       // overrides the manifest
    std::optional<int> pole_bound;  // overrides the manifest
    std::optional<std::string> point;  // restrict point commands to one point
};

const std::vector<std::string>& command_names();

struct Outcome {
    json document;  // {command, inputs, results, checks} or {command, error}
    int exit_code = kSuccess;
};

// Runs a command on manifest text. Never throws: errors become exit codes 1 or 2.
Outcome run(const std::string& command, const std::string& manifest_text, const Options& options = {});
Outcome run_file(const std::string& command, const std::string& path, const Options& options = {});

// Deterministic serialization: sorted keys, two-space indent.
std::string to_json_text(const json& doc);
// Human-readable rendering of the same document.
std::string to_table(const json& doc);

// JSON forms shared with the Python bindings.
json place_json(const Place& v, const std::string& var);
json divisor_json(const DivisorReport& d, const std::string& var);
json section_json(const GradedSection& s, const std::string& var);

}  // namespace ellsurf::cli

#endif
