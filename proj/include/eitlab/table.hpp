// table.hpp - rectangular result tables with a provenance header, written as
// CSV or JSON with fixed 17-significant-digit formatting.

#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "eitlab/optics.hpp"

namespace eitlab {

/// A table cell. Doubles must be finite except +inf, which is written as the
/// diverged-velocity sentinel "inf".
using Cell = std::variant<double, bool, std::string>;

struct ProvenanceEntry {
  std::string key;
  std::string value;
  bool json_value = false;  // value is already a JSON document
};

struct OutputTable {
  std::vector<ProvenanceEntry> provenance;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws std::logic_error if the row width does not match the columns.
  void add_row(std::vector<Cell> row);
};

Cell velocity_cell(const GroupVelocity& v);

/// "%.17g", or "inf" for +inf. Throws std::domain_error for NaN or -inf.
std::string format_number(double v);

void write_csv(std::ostream& os, const OutputTable& table);
void write_json(std::ostream& os, const OutputTable& table);

}  // namespace eitlab
