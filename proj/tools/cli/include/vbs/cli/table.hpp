#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace vbs::cli {

/// One table cell; monostate marks a value that is not defined for the row.
using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

enum class OutputFormat { csv, json };

/// Header row, comma-separated, '.' decimal point, LF line endings.
/// Undefined cells are empty; doubles use the shortest round-trip form.
void write_csv(std::ostream& out, const Table& table);

/// {"config": ..., "columns": [...], "rows": [[...], ...]}, undefined cells as null.
nlohmann::ordered_json to_json(const Table& table, const nlohmann::ordered_json& config);
void write_json(std::ostream& out, const Table& table, const nlohmann::ordered_json& config);

}  // namespace vbs::cli
