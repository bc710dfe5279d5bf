#include "walkrank/io.hpp"

#include <zlib.h>

#include <array>
#include <charconv>
#include <cmath>
#include <memory>

#include "walkrank/errors.hpp"

namespace walkrank {
namespace {

struct GzCloser {
  void operator()(gzFile_s* f) const noexcept { gzclose(f); }
};

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  // gzread passes uncompressed files through unchanged.
  std::unique_ptr<gzFile_s, GzCloser> file(gzopen(path.c_str(), "rb"));
  if (!file) throw DomainError("cannot open '" + path + "'");
  std::string content;
  std::array<char, 1 << 16> buffer{};
  for (;;) {
    const int n = gzread(file.get(), buffer.data(), static_cast<unsigned>(buffer.size()));
    if (n < 0) {
      int code = 0;
      throw DomainError("cannot read '" + path + "': " + gzerror(file.get(), &code));
    }
    if (n == 0) break;
    content.append(buffer.data(), static_cast<std::size_t>(n));
  }
  return content;
}

std::string format_double(double value) {
  std::array<char, 32> buffer{};
  const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), end);
}

namespace detail {

std::vector<TabLine> split_tab_lines(std::string_view text) {
  std::vector<TabLine> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view raw = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++number;

    const auto content = trim(raw);
    if (content.empty() || content.front() == '#') continue;

    TabLine line{number, {}};
    std::string_view rest = raw;
    for (;;) {
      const auto tab = rest.find('\t');
      line.fields.push_back(trim(rest.substr(0, tab)));
      if (tab == std::string_view::npos) break;
      rest = rest.substr(tab + 1);
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

double parse_real(std::string_view field, std::size_t line, std::string_view what) {
  double value = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc{} || ptr != last) {
    throw ParseError(line, "invalid " + std::string(what) + " '" + std::string(field) + "'");
  }
  if (!std::isfinite(value)) {
    throw DomainError("line " + std::to_string(line) + ": non-finite " + std::string(what));
  }
  return value;
}

long long parse_integer(std::string_view field, std::size_t line, std::string_view what) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line, "invalid " + std::string(what) + " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace detail
}  // namespace walkrank
