#pragma once

#include <string>
#include <vector>

namespace mggm {

// Minimal RFC-4180 CSV support: header row mandatory, UTF-8 passthrough,
// '.' decimal separator, doubles serialized with full round-trip precision.

std::string csv_escape(const std::string& field);
std::string csv_double(double v);  // %.17g, locale independent

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Parses CSV text (quoted fields, embedded separators/newlines, CRLF or LF).
// Throws DataError on malformed quoting.
CsvTable parse_csv(const std::string& text, const std::string& origin = "");

// Strict numeric field parse; throws DataError naming origin/row/column.
double parse_csv_number(const std::string& field, const std::string& origin,
                        std::size_t row, std::size_t col);

}  // namespace mggm
