#include "vbs/cli/table.hpp"

#include <cmath>
#include <ostream>

#include "vbs/cli/units.hpp"
#include "vbs/errors.hpp"

namespace vbs::cli {

namespace {

std::string csv_field(const Cell& cell) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& v) const {
            if (v.find_first_of(",\"\n") == std::string::npos)
                return v;
            std::string quoted = "\"";
            for (char c : v) {
                if (c == '"')
                    quoted += '"';
                quoted += c;
            }
            return quoted + "\"";
        }
    };
    return std::visit(Visitor{}, cell);
}

nlohmann::ordered_json json_value(const Cell& cell) {
    struct Visitor {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(double v) const { return v; }
        nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
        nlohmann::ordered_json operator()(bool v) const { return v; }
        nlohmann::ordered_json operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, cell);
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw InvalidArgument("table row has " + std::to_string(row.size()) + " cells, expected "
                              + std::to_string(columns.size()));
    for (const Cell& cell : row)
        if (const double* v = std::get_if<double>(&cell); v && !std::isfinite(*v))
            throw NumericError("non-finite value in output table");
    rows.push_back(std::move(row));
}

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << csv_field(row[i]);
        out << '\n';
    }
}

nlohmann::ordered_json to_json(const Table& table, const nlohmann::ordered_json& config) {
    nlohmann::ordered_json doc;
    doc["config"] = config;
    doc["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json encoded = nlohmann::ordered_json::array();
        for (const Cell& cell : row)
            encoded.push_back(json_value(cell));
        rows.push_back(std::move(encoded));
    }
    doc["rows"] = std::move(rows);
    return doc;
}

void write_json(std::ostream& out, const Table& table, const nlohmann::ordered_json& config) {
    out << to_json(table, config).dump() << '\n';
}

}  // namespace vbs::cli
