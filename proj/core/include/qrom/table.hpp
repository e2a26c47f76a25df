#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qrom {

/// Parse failure in a table file; `line` is 1-based, 0 when not line-bound.
class TableParseError : public std::runtime_error {
 public:
  TableParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                                : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Classical data f: [0, N) -> b-bit strings. Bit j of entry x is f_{x,j},
/// bit 0 least significant.
class LookupTable {
 public:
  LookupTable(std::size_t bit_width, std::vector<std::uint64_t> entries);

  std::size_t size() const { return entries_.size(); }
  std::size_t bit_width() const { return bit_width_; }
  const std::vector<std::uint64_t>& entries() const { return entries_; }

  /// f(x), with f(x) = 0 for x >= N (padding of the last address block).
  std::uint64_t at(std::uint64_t x) const {
    return x < entries_.size() ? entries_[x] : 0;
  }
  bool bit(std::uint64_t x, std::size_t j) const { return (at(x) >> j) & 1; }

  /// Bits [first, first + count) of f(x), shifted down to bit 0.
  std::uint64_t slice(std::uint64_t x, std::size_t first,
                      std::size_t count) const;

 private:
  std::size_t bit_width_;
  std::vector<std::uint64_t> entries_;
};

/// Text format: first non-comment line "N b", then N values (decimal or
/// 0x-prefixed hex), one per line. '#' starts a comment.
LookupTable parse_table(std::string_view text);
std::string format_table(const LookupTable& table);

}  // namespace qrom
