#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cavityclock {

/// Tabular result with named columns and metadata comment lines. Rows are
/// assembled fully before emission so output ordering never depends on
/// evaluation order.
struct Table {
    std::vector<std::string> metadata;  // emitted as "# ..." comment lines
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_metadata(const std::string& key, const std::string& value);
};

enum class OutputFormat { csv, json };

/// Full-precision (17 significant digits) decimal rendering.
std::string format_real(double value);

std::string to_csv(const Table& table);
std::string to_json(const Table& table);

/// Atomic emission: write to a temporary sibling, then rename into place.
/// Empty path writes to stdout.
void emit(const Table& table, OutputFormat format,
          const std::filesystem::path& path);

}  // namespace cavityclock
