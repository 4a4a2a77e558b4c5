#ifndef RSM_REPORT_HPP
#define RSM_REPORT_HPP

// Suite reports and their CSV / JSON serialisation.
//
// JSON: {"suite", "config", "pass", "summary", "rows"} with rows as objects
// keyed by column name. CSV: header line of column names, one line per row,
// RFC 4180 quoting, CRLF line ends, doubles as %.17g. Both are byte-stable
// for equal reports.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rsm::report {

/// monostate is an empty cell (CSV "", JSON null).
using Cell = std::variant<std::monostate, bool, std::int64_t, double, std::string>;
using Fields = std::vector<std::pair<std::string, Cell>>;

struct Report {
    std::string suite;
    Fields config;
    bool pass = false;
    Fields summary;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Throws std::logic_error if the row width differs from columns.
    void add_row(std::vector<Cell> row);
    /// Summary value by key; std::out_of_range if absent.
    const Cell& summary_value(const std::string& key) const;
    double summary_number(const std::string& key) const;
};

enum class Format { csv, json };

std::string csv_field(const Cell& c);
std::string to_csv(const Report& r);
std::string to_json(const Report& r);

/// Writes to `path`, or stdout when path is empty or "-". Throws
/// std::runtime_error on I/O failure.
void write_report(const Report& r, Format f, const std::string& path);

}

#endif
