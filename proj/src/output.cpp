#include "qtamm/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "qtamm/errors.hpp"

namespace qtamm {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw Error(ErrorKind::InvalidParams, "row has " + std::to_string(row.size()) +
                                              " cells, table has " +
                                              std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw Error(ErrorKind::InvalidParams, "unknown format '" + s + "' (csv or json)");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), r.ptr);
}

namespace {

std::string csv_cell(const Cell& c) {
  struct V {
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
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
  };
  return std::visit(V{}, c);
}

std::string json_cell(const Cell& c) {
  struct V {
    std::string operator()(double v) const { return std::isfinite(v) ? format_double(v) : "null"; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return nlohmann::json(s).dump(); }
  };
  return std::visit(V{}, c);
}

}  // namespace

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

// Numbers go through format_double so both formats carry identical digits.
void write_json(const Table& t, std::ostream& os) {
  std::vector<std::string> keys;
  for (const auto& c : t.columns) keys.push_back(nlohmann::json(c).dump());
  os << '[';
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << (r ? ",\n " : "\n ") << '{';
    for (std::size_t i = 0; i < keys.size(); ++i) {
      os << (i ? ", " : "") << keys[i] << ": " << json_cell(t.rows[r][i]);
    }
    os << '}';
  }
  os << (t.rows.empty() ? "]\n" : "\n]\n");
}

void write_table(const Table& t, Format f, std::ostream& os) {
  if (f == Format::Csv) {
    write_csv(t, os);
  } else {
    write_json(t, os);
  }
}

}  // namespace qtamm
