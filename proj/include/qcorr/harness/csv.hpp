#pragma once

// CSV conventions: UTF-8, one header row, comma separated, doubles with 17
// significant digits, summary lines prefixed with '#'.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/errors.hpp"

namespace qcorr::harness {

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, end);
}

/// Empty field for absent optional values.
inline std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void header(std::initializer_list<std::string_view> cols) {
    write_fields(std::vector<std::string>(cols.begin(), cols.end()));
  }
  void row(const std::vector<std::string>& fields) { write_fields(fields); }
  void comment(std::string_view key, double value) {
    os_ << "# " << key << '=' << format_double(value) << '\n';
  }
  void comment(std::string_view text) { os_ << "# " << text << '\n'; }

 private:
  void write_fields(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) os_ << ',';
      os_ << fields[i];
    }
    os_ << '\n';
  }
  std::ostream& os_;
};

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    return std::nullopt;
  }
};

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Parses a table written by CsvWriter; '#' lines are skipped.
inline CsvTable parse_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_csv_line(line);
    if (!have_header) {
      t.columns = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.columns.size())
      throw MalformedCsv("row has " + std::to_string(fields.size()) + " fields, header has " +
                         std::to_string(t.columns.size()));
    t.rows.push_back(std::move(fields));
  }
  if (!have_header) throw MalformedCsv("missing header row");
  return t;
}

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_csv(in);
}

/// Parses a numeric field; empty fields yield nullopt.
inline std::optional<double> parse_number(std::string_view field) {
  if (field.empty()) return std::nullopt;
  if (field == "nan") return std::nan("");
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw MalformedCsv("not a number: '" + std::string(field) + "'");
  return v;
}

}  // namespace qcorr::harness
