#include "rsm/report.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace rsm::report {

void Report::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("report " + suite + ": row width " + std::to_string(row.size()) +
                               " does not match " + std::to_string(columns.size()) + " columns");
    }
    rows.push_back(std::move(row));
}

const Cell& Report::summary_value(const std::string& key) const {
    for (const auto& [k, v] : summary) {
        if (k == key) {
            return v;
        }
    }
    throw std::out_of_range("report " + suite + ": no summary key " + key);
}

double Report::summary_number(const std::string& key) const {
    const Cell& c = summary_value(key);
    if (const auto* d = std::get_if<double>(&c)) {
        return *d;
    }
    if (const auto* i = std::get_if<std::int64_t>(&c)) {
        return static_cast<double>(*i);
    }
    if (const auto* b = std::get_if<bool>(&c)) {
        return *b ? 1.0 : 0.0;
    }
    throw std::invalid_argument("report " + suite + ": summary key " + key + " is not numeric");
}

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::ordered_json to_json_value(const Cell& c) {
    return std::visit([](const auto& v) -> nlohmann::ordered_json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) {
            return nullptr;
        } else if constexpr (std::is_same_v<V, double>) {
            // JSON has no inf/nan; keep them readable as strings
            if (!std::isfinite(v)) {
                return format_double(v);
            }
            return v;
        } else {
            return v;
        }
    }, c);
}

nlohmann::ordered_json fields_json(const Fields& f) {
    auto o = nlohmann::ordered_json::object();
    for (const auto& [k, v] : f) {
        o[k] = to_json_value(v);
    }
    return o;
}

}

std::string csv_field(const Cell& c) {
    std::string s = std::visit([](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) {
            return "";
        } else if constexpr (std::is_same_v<V, bool>) {
            return v ? "true" : "false";
        } else if constexpr (std::is_same_v<V, std::int64_t>) {
            return std::to_string(v);
        } else if constexpr (std::is_same_v<V, double>) {
            return format_double(v);
        } else {
            return v;
        }
    }, c);
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') {
            q += '"';
        }
        q += ch;
    }
    return q + "\"";
}

std::string to_csv(const Report& r) {
    std::string out;
    auto line = [&](const auto& cells, auto fmt) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) {
                out += ',';
            }
            out += fmt(cells[i]);
        }
        out += "\r\n";
    };
    line(r.columns, [](const std::string& s) { return csv_field(Cell{s}); });
    for (const auto& row : r.rows) {
        line(row, [](const Cell& c) { return csv_field(c); });
    }
    return out;
}

std::string to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["config"] = fields_json(r.config);
    j["pass"] = r.pass;
    j["summary"] = fields_json(r.summary);
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        auto o = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            o[r.columns[i]] = to_json_value(row[i]);
        }
        rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

void write_report(const Report& r, Format f, const std::string& path) {
    const std::string text = f == Format::csv ? to_csv(r) : to_json(r);
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        if (!std::cout) {
            throw std::runtime_error("write_report: failed writing to stdout");
        }
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("write_report: cannot open " + path);
    }
    out << text;
    out.close();
    if (!out) {
        throw std::runtime_error("write_report: failed writing " + path);
    }
}

}
