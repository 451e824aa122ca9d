#pragma once

#include <string>
#include <variant>
#include <vector>

#include "pdqls/common.hpp"

namespace pdqls::bench {

using CsvCell = std::variant<std::string, double, long long>;
using CsvRow = std::vector<CsvCell>;

// RFC-4180 output: CRLF line endings, quoting only where required, doubles at
// 17 significant digits.
std::string format_cell(const CsvCell& cell);
std::string emit_csv(const std::vector<std::string>& header, const std::vector<CsvRow>& rows);
void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<CsvRow>& rows);

// Minimal reader for round-trip checks: splits quoted fields, keeps strings.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

// FNV-1a over the canonical config string; embedded in every sweep row.
std::uint64_t config_hash(const std::string& canonical);

inline constexpr const char* kBuildId = "pdqls-0.1.0";

}  // namespace pdqls::bench
