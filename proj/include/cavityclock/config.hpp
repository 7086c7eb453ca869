#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cavityclock/table.hpp"

namespace cavityclock {

enum class Command { state, bogo, qfi, sweep, circuit };

/// Parsed run configuration. Flat, typed key-value store; unknown keys are
/// rejected at parse time, as are values violating the preconditions of the
/// selected command (e.g. h >= 2 under bogo).
struct RunConfig {
    Command command = Command::qfi;
    OutputFormat format = OutputFormat::csv;
    std::string out;

    std::map<std::string, double> reals;
    std::map<std::string, long> ints;
    std::map<std::string, std::string> enums;
    std::map<std::string, std::vector<double>> lists;

    double real_or(const std::string& key, double fallback) const;
    long int_or(const std::string& key, long fallback) const;
    std::string enum_or(const std::string& key,
                        const std::string& fallback) const;
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::vector<std::string>& messages);
    std::vector<std::string> errors;
};

/// Parse line-oriented "key = value" text with '#' comments. List values are
/// comma-separated; "<axis>_grid = start:stop:step" expands to an inclusive
/// grid. All invalid lines are reported together.
RunConfig parse_config(const std::string& text);

/// Canonical text form; parse(print(config)) == config.
std::string print_config(const RunConfig& config);

/// Execute the configured command and return its result table.
Table run_command(const RunConfig& config);

}  // namespace cavityclock
