#include "qrom/table.hpp"

#include <charconv>

namespace qrom {

namespace {

std::uint64_t low_mask(std::size_t bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::uint64_t parse_uint(std::string_view token, std::size_t line) {
  int base = 10;
  if (token.size() > 2 && token[0] == '0' && (token[1] == 'x' || token[1] == 'X')) {
    token.remove_prefix(2);
    base = 16;
  }
  std::uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value, base);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw TableParseError(line, "invalid unsigned integer '" +
                                    std::string(token) + "'");
  }
  return value;
}

}  // namespace

LookupTable::LookupTable(std::size_t bit_width,
                         std::vector<std::uint64_t> entries)
    : bit_width_(bit_width), entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("table must have N >= 1");
  if (bit_width_ == 0 || bit_width_ > 64) {
    throw std::invalid_argument("table bit width must be in [1, 64]");
  }
  for (std::size_t x = 0; x < entries_.size(); ++x) {
    if (entries_[x] & ~low_mask(bit_width_)) {
      throw std::invalid_argument("entry " + std::to_string(x) +
                                  " does not fit in " +
                                  std::to_string(bit_width_) + " bits");
    }
  }
}

std::uint64_t LookupTable::slice(std::uint64_t x, std::size_t first,
                                 std::size_t count) const {
  if (first >= 64) return 0;
  return (at(x) >> first) & low_mask(count);
}

LookupTable parse_table(std::string_view text) {
  std::size_t n = 0;
  std::size_t b = 0;
  bool have_header = false;
  std::vector<std::uint64_t> values;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (!have_header) {
      auto sp = line.find_first_of(" \t");
      if (sp == std::string_view::npos) {
        throw TableParseError(line_no, "expected header 'N b'");
      }
      n = parse_uint(trim(line.substr(0, sp)), line_no);
      b = parse_uint(trim(line.substr(sp + 1)), line_no);
      if (n == 0) throw TableParseError(line_no, "N must be at least 1");
      if (b == 0 || b > 64) {
        throw TableParseError(line_no, "b must be in [1, 64]");
      }
      have_header = true;
      continue;
    }
    if (line.find_first_of(" \t") != std::string_view::npos) {
      throw TableParseError(line_no, "expected one value per line");
    }
    if (values.size() == n) {
      throw TableParseError(line_no, "more than N = " + std::to_string(n) +
                                         " data lines");
    }
    std::uint64_t v = parse_uint(line, line_no);
    if (v & ~low_mask(b)) {
      throw TableParseError(line_no, "value " + std::to_string(v) +
                                         " does not fit in " +
                                         std::to_string(b) + " bits");
    }
    values.push_back(v);
  }
  if (!have_header) throw TableParseError(0, "missing header 'N b'");
  if (values.size() != n) {
    throw TableParseError(line_no, "expected " + std::to_string(n) +
                                       " data lines, found " +
                                       std::to_string(values.size()));
  }
  return LookupTable(b, std::move(values));
}

std::string format_table(const LookupTable& table) {
  std::string out = std::to_string(table.size()) + " " +
                    std::to_string(table.bit_width()) + "\n";
  for (std::uint64_t v : table.entries()) out += std::to_string(v) + "\n";
  return out;
}

}  // namespace qrom
