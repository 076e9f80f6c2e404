#include "output.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace phantom::cli {

void Table::add(std::vector<json> row)
{
    if (row.size() != columns.size())
        throw std::logic_error("table row has the wrong number of cells");
    rows.push_back(std::move(row));
}

std::string format_number(double x)
{
    if (!std::isfinite(x))
        return {};
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

std::string cell_text(const json& v)
{
    switch (v.type()) {
    case json::value_t::null:
        return {};
    case json::value_t::boolean:
        return v.get<bool>() ? "1" : "0";
    case json::value_t::number_float:
        return format_number(v.get<double>());
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
        return v.dump();
    case json::value_t::string: {
        const auto& s = v.get_ref<const std::string&>();
        if (s.find_first_of(",\"\n") == std::string::npos)
            return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"')
                q += '"';
            q += c;
        }
        return q + "\"";
    }
    default:
        return cell_text(json(v.dump()));
    }
}

void write_row(std::ostream& os, const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            os << ',';
        os << cells[i];
    }
    os << '\n';
}

void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, json>>& out)
{
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else {
        out.emplace_back(prefix, v);
    }
}

} // namespace

void write_csv(const Output& out, std::ostream& os)
{
    for (auto it = out.meta.begin(); it != out.meta.end(); ++it)
        os << "# " << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
           << '\n';
    if (!out.derived.is_null())
        os << "# derived: " << out.derived.dump() << '\n';

    if (!out.report.is_null()) {
        std::vector<std::pair<std::string, json>> kv;
        flatten(out.report, "", kv);
        write_row(os, {"key", "value"});
        for (const auto& [k, v] : kv)
            write_row(os, {k, cell_text(v)});
        return;
    }
    write_row(os, out.table.columns);
    std::vector<std::string> cells;
    for (const auto& row : out.table.rows) {
        cells.clear();
        for (const auto& v : row)
            cells.push_back(cell_text(v));
        write_row(os, cells);
    }
}

void write_json(const Output& out, std::ostream& os)
{
    json doc = json::object();
    doc["meta"] = out.meta;
    if (!out.derived.is_null())
        doc["derived"] = out.derived;
    if (!out.report.is_null())
        doc["report"] = out.report;
    if (!out.table.columns.empty()) {
        doc["columns"] = out.table.columns;
        json rows = json::array();
        for (const auto& r : out.table.rows)
            rows.push_back(r);
        doc["rows"] = std::move(rows);
    }
    os << doc.dump(1) << '\n';
}

} // namespace phantom::cli
