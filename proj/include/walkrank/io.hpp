#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace walkrank {

/// Whole file as a string; gzip-compressed files are decompressed.
std::string read_text_file(const std::string& path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

namespace detail {

/// One logical input line split on tabs, with spaces and '\r' trimmed from
/// each field.
struct TabLine {
  std::size_t number;
  std::vector<std::string_view> fields;
};

/// Splits text into tab-separated records, skipping blank and `#` lines.
std::vector<TabLine> split_tab_lines(std::string_view text);

double parse_real(std::string_view field, std::size_t line, std::string_view what);
long long parse_integer(std::string_view field, std::size_t line, std::string_view what);

}  // namespace detail
}  // namespace walkrank
