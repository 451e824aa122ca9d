#include "pdqls/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pdqls::bench {

namespace {

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_cell(const CsvCell& cell) {
  if (std::holds_alternative<std::string>(cell))
    return quote_if_needed(std::get<std::string>(cell));
  if (std::holds_alternative<long long>(cell))
    return std::to_string(std::get<long long>(cell));
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(cell));
  return buf;
}

std::string emit_csv(const std::vector<std::string>& header, const std::vector<CsvRow>& rows) {
  std::ostringstream out;
  for (size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << quote_if_needed(header[i]);
  out << "\r\n";
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw validation_error("CSV row width does not match the schema");
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << "\r\n";
  }
  return out.str();
}

void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<CsvRow>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw validation_error("cannot write " + path);
  f << emit_csv(header, rows);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool in_quotes = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\r') {
      // consumed with the following newline
    } else if (c == '\n') {
      row.push_back(std::move(cell));
      cell.clear();
      rows.push_back(std::move(row));
      row.clear();
    } else {
      cell += c;
    }
  }
  if (!cell.empty() || !row.empty()) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::uint64_t config_hash(const std::string& canonical) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace pdqls::bench
