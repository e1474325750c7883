#pragma once

// Small RFC-4180 CSV writer/reader. Numeric cells use the shortest
// round-trip decimal form, so writing and re-reading a table reproduces the
// original doubles bit for bit. Lines starting with '#' before the header
// carry free-form comments (provenance).

#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "entroflow/errors.hpp"
#include "entroflow/numeric.hpp"

namespace entroflow {

inline std::string csv_quote(std::string_view field) {
  const bool needs_quote = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quote) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

struct CsvTable {
  std::vector<std::string> comments;  // without the leading '#'
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline void write_csv(std::ostream& os, const CsvTable& table) {
  for (const auto& c : table.comments) os << "# " << c << "\n";
  auto emit_row = [&os](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << csv_quote(row[i]);
    }
    os << "\n";
  };
  emit_row(table.header);
  for (const auto& row : table.rows) emit_row(row);
}

inline std::string csv_to_string(const CsvTable& table) {
  std::ostringstream oss;
  write_csv(oss, table);
  return oss.str();
}

/// Parses CSV with quoted fields (quotes may contain commas, escaped quotes
/// and newlines). Leading '#' lines become comments.
inline CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());

  std::size_t pos = 0;
  // Comment prefix.
  while (pos < text.size() && text[pos] == '#') {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::size_t start = pos + 1;
    if (start < eol && text[start] == ' ') ++start;
    std::string line = text.substr(start, eol - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    table.comments.push_back(line);
    pos = eol == text.size() ? eol : eol + 1;
  }

  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_started = false;
  auto end_field = [&]() {
    row.push_back(field);
    field.clear();
  };
  auto end_row = [&]() {
    end_field();
    if (table.header.empty()) table.header = row;
    else table.rows.push_back(row);
    row.clear();
    row_started = false;
  };

  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (in_quotes) {
      if (c == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          field += '"';
          ++pos;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        row_started = true;
        break;
      case ',':
        end_field();
        row_started = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_started || !field.empty() || !row.empty()) end_row();
        break;
      default:
        field += c;
        row_started = true;
        break;
    }
  }
  if (in_quotes) throw validation_error("CSV ends inside a quoted field");
  if (row_started || !field.empty() || !row.empty()) end_row();
  return table;
}

}  // namespace entroflow
