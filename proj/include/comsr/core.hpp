#pragma once

// Shared primitive types and error categories.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace comsr {

/// Alphabet symbol. Ids are arbitrary non-negative integers; no densification.
using Item = std::uint32_t;

/// 1-based position inside a sequence.
using Pos = std::uint32_t;

/// Unordered, duplicate-free item collection kept sorted ascending.
using Itemset = std::vector<Item>;

/// Sentinel for an unbounded rule-size cap.
inline constexpr std::uint32_t kNoCap = UINT32_MAX;

/// Sorts and deduplicates, establishing the canonical Itemset form.
inline Itemset normalize_itemset(Itemset items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

/// Input text violates the SPMF grammar; line is 1-based.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Filesystem access failed.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An encoded database is internally inconsistent or does not fit its code set.
class decode_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace comsr
