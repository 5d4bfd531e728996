#pragma once

// Tabular output. Every record set is written either as CSV (header row,
// comma separator, one record per line) or as a JSON array of objects with
// the same keys in the same order.
//
// Floating-point cells use the shortest decimal that round-trips to the
// same double (std::to_chars without precision). NaN and infinities are
// written as nan, inf, -inf in CSV and as null in JSON.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qtamm {

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Error(InvalidParams) unless the row has one cell per column.
  void add(std::vector<Cell> row);
};

enum class Format { Csv, Json };

/// Error(InvalidParams) for anything but "csv" or "json".
Format parse_format(const std::string& s);

std::string format_double(double v);

void write_csv(const Table& t, std::ostream& os);
void write_json(const Table& t, std::ostream& os);
void write_table(const Table& t, Format f, std::ostream& os);

}  // namespace qtamm
