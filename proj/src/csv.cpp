#include "mggm/csv.hpp"

#include <charconv>
#include <cstdio>

#include "mggm/errors.hpp"

namespace mggm {

std::string csv_escape(const std::string& field) {
  const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvTable parse_csv(const std::string& text, const std::string& origin) {
  CsvTable table;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool record_started = false;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    if (table.header.empty()) {
      table.header = std::move(record);
    } else {
      table.rows.push_back(std::move(record));
    }
    record.clear();
    record_started = false;
  };

  for (std::size_t idx = 0; idx < text.size(); ++idx) {
    const char c = text[idx];
    if (in_quotes) {
      if (c == '"') {
        if (idx + 1 < text.size() && text[idx + 1] == '"') {
          field += '"';
          ++idx;
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
        if (!field.empty()) {
          throw DataError("malformed CSV quoting in " + origin);
        }
        in_quotes = true;
        record_started = true;
        break;
      case ',':
        end_field();
        record_started = true;
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        break;
      default:
        field += c;
        record_started = true;
        break;
    }
  }
  if (in_quotes) throw DataError("unterminated CSV quote in " + origin);
  if (record_started || !field.empty() || !record.empty()) end_record();
  return table;
}

double parse_csv_number(const std::string& field, const std::string& origin,
                        std::size_t row, std::size_t col) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  // Tolerate surrounding spaces, nothing else.
  while (begin < end && *begin == ' ') ++begin;
  while (end > begin && *(end - 1) == ' ') --end;
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end || begin == end) {
    throw DataError("non-numeric cell '" + field + "' in " + origin + " at row " +
                    std::to_string(row + 1) + ", column " + std::to_string(col + 1));
  }
  return value;
}

}  // namespace mggm
