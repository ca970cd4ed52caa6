#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "farey/error.hpp"

namespace farey::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exact rationals and words travel as strings.
using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    bool operator==(const Table&) const = default;
};

struct Report {
    std::string command;
    std::string version = kVersion;
    std::vector<std::pair<std::string, std::string>> parameters;  // in flag order
    std::vector<std::pair<std::string, Cell>> scalars;
    Table table;

    bool operator==(const Report&) const = default;

    void scalar(std::string name, Cell v) { scalars.emplace_back(std::move(name), std::move(v)); }
};

inline std::string format_real(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_field(const Cell& c) {
    struct {
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_real(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string out = "\"";
            for (char ch : s) {
                if (ch == '"') out += '"';
                out += ch;
            }
            return out + "\"";
        }
    } visit;
    return std::visit(visit, c);
}

/// Header and rows of the table; a report without rows becomes one row of scalars.
inline std::string to_csv(const Report& r) {
    std::string out;
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ',';
            out += fields[i];
        }
        out += '\n';
    };
    if (!r.table.rows.empty()) {
        line(r.table.columns);
        for (const auto& row : r.table.rows) {
            std::vector<std::string> f;
            for (const Cell& c : row) f.push_back(csv_field(c));
            line(f);
        }
        return out;
    }
    std::vector<std::string> head, vals;
    for (const auto& [k, v] : r.scalars) {
        head.push_back(k);
        vals.push_back(csv_field(v));
    }
    line(head);
    line(vals);
    return out;
}

using ojson = nlohmann::ordered_json;

inline ojson cell_json(const Cell& c) {
    return std::visit([](const auto& v) { return ojson(v); }, c);
}

inline Cell json_cell(const ojson& j) {
    if (j.is_boolean()) return j.get<bool>();
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_float()) return j.get<double>();
    if (j.is_string()) return j.get<std::string>();
    throw domain_error("report: unsupported JSON value");
}

inline std::string to_json(const Report& r) {
    ojson j;
    j["metadata"]["command"] = r.command;
    j["metadata"]["version"] = r.version;
    j["metadata"]["parameters"] = ojson::object();
    for (const auto& [k, v] : r.parameters) j["metadata"]["parameters"][k] = v;
    ojson& pay = j["payload"];
    pay["scalars"] = ojson::object();
    for (const auto& [k, v] : r.scalars) pay["scalars"][k] = cell_json(v);
    pay["columns"] = r.table.columns;
    pay["rows"] = ojson::array();
    for (const auto& row : r.table.rows) {
        ojson jr = ojson::array();
        for (const Cell& c : row) jr.push_back(cell_json(c));
        pay["rows"].push_back(std::move(jr));
    }
    return j.dump(2) + "\n";
}

inline Report from_json(const std::string& text) {
    const ojson j = ojson::parse(text);
    Report r;
    const ojson& meta = j.at("metadata");
    r.command = meta.at("command").get<std::string>();
    r.version = meta.at("version").get<std::string>();
    for (const auto& [k, v] : meta.at("parameters").items()) r.parameters.emplace_back(k, v.get<std::string>());
    const ojson& pay = j.at("payload");
    for (const auto& [k, v] : pay.at("scalars").items()) r.scalars.emplace_back(k, json_cell(v));
    r.table.columns = pay.at("columns").get<std::vector<std::string>>();
    for (const ojson& jr : pay.at("rows")) {
        std::vector<Cell> row;
        for (const ojson& c : jr) row.push_back(json_cell(c));
        r.table.rows.push_back(std::move(row));
    }
    return r;
}

enum class Format { csv, json };

inline std::string serialize(const Report& r, Format f) { return f == Format::csv ? to_csv(r) : to_json(r); }

}  // namespace farey::cli
