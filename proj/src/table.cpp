#include "cavityclock/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cavityclock {

void Table::add_metadata(const std::string& key, const std::string& value) {
    metadata.push_back(key + " = " + value);
}

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string to_csv(const Table& table) {
    std::ostringstream out;
    for (const auto& line : table.metadata) {
        out << "# " << line << '\n';
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i > 0) out << ',';
        out << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::logic_error("row width does not match header");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ',';
            out << format_real(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

std::string to_json(const Table& table) {
    nlohmann::json doc;  // nlohmann::json keeps keys sorted
    doc["columns"] = table.columns;
    doc["metadata"] = table.metadata;
    if (table.rows.size() == 1) {
        // Single-row results flatten to an object, e.g. {"value": 4.0, ...}.
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            doc[table.columns[i]] = table.rows[0][i];
        }
    } else {
        doc["rows"] = table.rows;
    }
    return doc.dump(2) + "\n";
}

void emit(const Table& table, OutputFormat format,
          const std::filesystem::path& path) {
    const std::string payload =
        format == OutputFormat::csv ? to_csv(table) : to_json(table);
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot open for writing: " + tmp.string());
        }
        out << payload;
        if (!out) {
            throw std::runtime_error("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("rename failed for " + path.string() + ": " +
                                 ec.message());
    }
}

}  // namespace cavityclock
