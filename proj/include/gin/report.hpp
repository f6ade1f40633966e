#pragma once

// Report emission shared by the CLI subcommands: CSV and JSON with a stable
// column order, floats rendered with 17 significant digits, trailing
// newline.

#include <cstdio>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gin/graph_json.hpp"

namespace gin {

using ReportCell = std::variant<std::string, double, long long>;

struct ReportTable {
    std::vector<std::string> columns;
    std::vector<std::vector<ReportCell>> rows;
};

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string render_cell(const ReportCell& cell) {
    if (std::holds_alternative<std::string>(cell)) return std::get<std::string>(cell);
    if (std::holds_alternative<long long>(cell)) return std::to_string(std::get<long long>(cell));
    return format_double(std::get<double>(cell));
}

inline std::string render_csv(const ReportTable& table) {
    if (table.rows.empty()) throw std::invalid_argument("emit_report: no records");
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ",";
        out += table.columns[c];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) throw std::invalid_argument("emit_report: ragged row");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ",";
            out += render_cell(row[c]);
        }
        out += "\n";
    }
    return out;
}

inline nlohmann::ordered_json render_json(const ReportTable& table) {
    if (table.rows.empty()) throw std::invalid_argument("emit_report: no records");
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t c = 0; c < row.size(); ++c) {
            const ReportCell& cell = row[c];
            if (std::holds_alternative<std::string>(cell))
                obj[table.columns[c]] = std::get<std::string>(cell);
            else if (std::holds_alternative<long long>(cell))
                obj[table.columns[c]] = std::get<long long>(cell);
            else
                obj[table.columns[c]] = std::get<double>(cell);
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

inline void emit_report(const ReportTable& table, const std::string& format, const std::string& path) {
    if (format == "csv") {
        write_text_file(path, render_csv(table));
    } else if (format == "json") {
        write_text_file(path, render_json(table).dump(2) + "\n");
    } else {
        throw std::invalid_argument("emit_report: unknown format " + format);
    }
}

}  // namespace gin
