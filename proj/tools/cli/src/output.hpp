#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace phantom::cli {

using json = nlohmann::ordered_json;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    void add(std::vector<json> row);
};

/// A run's result: metadata, an optional table and an optional report.
struct Output {
    json meta = json::object();
    Table table;
    json report;  ///< null when the run produces only a table
    json derived; ///< summary values computed from the table, may be null
};

/// '#'-prefixed metadata lines, then a header row and one record per row.
/// A report without a table is written as key,value rows.
void write_csv(const Output& out, std::ostream& os);
void write_json(const Output& out, std::ostream& os);

/// Shortest round-trip text for a double; empty for non-finite values.
std::string format_number(double x);

} // namespace phantom::cli
