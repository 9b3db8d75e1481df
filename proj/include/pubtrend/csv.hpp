#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pubtrend::csv {

struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based physical line where the record starts
};

// Comma-separated records with RFC-4180 quoting: fields may be wrapped in
// double quotes, quoted fields may contain commas and line breaks, and a
// doubled quote inside a quoted field is a literal quote. CRLF and LF are
// both accepted. Throws InputError on an unterminated quoted field.
std::vector<Row> parse(std::string_view text);

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

// Joins escaped fields with commas, terminated by "\n".
std::string format_row(std::span<const std::string> fields);

}  // namespace pubtrend::csv
