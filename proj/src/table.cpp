#include "eitlab/table.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace eitlab {

void OutputTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::logic_error("OutputTable: row width does not match the header");
  rows.push_back(std::move(row));
}

Cell velocity_cell(const GroupVelocity& v) {
  return v.diverged ? std::numeric_limits<double>::infinity() : v.value;
}

std::string format_number(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  if (!std::isfinite(v))
    throw std::domain_error("OutputTable: non-finite value outside the diverged-velocity sentinel");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "1" : "0";
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    const std::string text = format_number(*d);
    return std::isinf(*d) ? json_string(text) : text;
  }
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return json_string(std::get<std::string>(c));
}

}  // namespace

void write_csv(std::ostream& os, const OutputTable& table) {
  for (const auto& p : table.provenance) os << "# " << p.key << ": " << p.value << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const OutputTable& table) {
  os << "{\n  \"provenance\": {";
  for (std::size_t i = 0; i < table.provenance.size(); ++i) {
    const auto& p = table.provenance[i];
    os << (i ? ", " : "") << json_string(p.key) << ": "
       << (p.json_value ? p.value : json_string(p.value));
  }
  os << "},\n  \"columns\": [";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? ", " : "") << json_string(table.columns[i]);
  os << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    os << (r ? ",\n    [" : "\n    [");
    const auto& row = table.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? ", " : "") << json_cell(row[i]);
    os << ']';
  }
  os << (table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

}  // namespace eitlab
