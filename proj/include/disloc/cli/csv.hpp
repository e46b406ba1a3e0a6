// CSV output. Numbers are written with std::to_chars in general format with
// 11 significant digits: locale-independent and byte-stable across runs.
#pragma once

#include <array>
#include <charconv>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace disloc::cli {

inline constexpr int kSignificantDigits = 11;

[[nodiscard]] inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, kSignificantDigits);
  return std::string(buf.data(), res.ptr);
}

[[nodiscard]] inline std::string format_number(int v) { return std::to_string(v); }

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(std::string_view text) { out_ << "# " << text << '\n'; }

  void header(const std::vector<std::string_view>& names) { write_row(names); }

  template <typename... Fields>
  void row(const Fields&... fields) {
    std::vector<std::string> cells{to_cell(fields)...};
    std::vector<std::string_view> views(cells.begin(), cells.end());
    write_row(views);
  }

 private:
  static std::string to_cell(double v) { return format_number(v); }
  static std::string to_cell(int v) { return format_number(v); }
  static std::string to_cell(std::size_t v) { return std::to_string(v); }
  static std::string to_cell(const std::string& s) { return quote_if_needed(s); }
  static std::string to_cell(const char* s) { return quote_if_needed(s); }

  // RFC 4180 quoting for free-text cells
  static std::string quote_if_needed(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + '"';
  }

  void write_row(const std::vector<std::string_view>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::ostream& out_;
};

}  // namespace disloc::cli
