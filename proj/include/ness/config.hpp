#pragma once

#include "ness/scaling.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ness {

enum class Task { steady_state, metric, gap, scaling, phase_diagram, oracle_check };
const char* to_string(Task t);
Task task_from_string(const std::string& s);

enum class OutputFormat { csv, json };
const char* to_string(OutputFormat f);
OutputFormat format_from_string(const std::string& s);

/// One key=value entry with its source line (0 for command-line overrides).
struct ConfigEntry {
    std::string value;
    int line = 0;
};
using ConfigEntries = std::map<std::string, ConfigEntry>;

/// Splits the flat format: one key=value per line, '#' starts a comment,
/// blank lines ignored. Unknown keys, duplicate keys and malformed lines
/// throw ErrorKind::config naming the line.
ConfigEntries parse_entries(const std::string& text);

/// Applies "key=value" overrides on top of parsed entries.
void apply_override(ConfigEntries& entries, const std::string& assignment);

struct RunConfig {
    Task task = Task::steady_state;
    ModelFamily family;
    double h = 0.0;
    double gamma = 0.0;
    int n = 0;
    std::vector<int> ns;
    GridSpec grid;
    std::string output_path;
    OutputFormat format = OutputFormat::json;
    std::uint64_t seed = 0;
    std::optional<int> workers;

    /// Canonical key=value echo, in key order.
    std::map<std::string, std::string> echo;
};

/// Validates entries into a RunConfig. Missing required keys are reported at
/// line 0; type and range errors name the key and its line.
RunConfig build_config(const ConfigEntries& entries);

/// parse_entries followed by build_config.
RunConfig parse_config(const std::string& text);

/// Keys accepted by the parser.
const std::vector<std::string>& known_keys();

}  // namespace ness
