#pragma once

// Sequence databases in SPMF text format: parsing, validation, summary stats.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "comsr/core.hpp"

namespace comsr {

/// One ordered sequence of itemsets. Positions are 1..steps.size().
struct Sequence {
  std::uint32_t sid = 0;
  std::vector<Itemset> steps;

  std::size_t size() const { return steps.size(); }

  std::size_t item_count() const {
    std::size_t n = 0;
    for (const auto& s : steps) n += s.size();
    return n;
  }

  friend bool operator==(const Sequence& a, const Sequence& b) {
    return a.sid == b.sid && a.steps == b.steps;
  }
};

/// An ordered collection of sequences with unique sids.
struct SequenceDatabase {
  std::vector<Sequence> sequences;

  std::size_t size() const { return sequences.size(); }
  bool empty() const { return sequences.empty(); }

  std::size_t total_items() const {
    std::size_t n = 0;
    for (const auto& s : sequences) n += s.item_count();
    return n;
  }

  /// Union of every itemset, ascending.
  std::vector<Item> alphabet() const {
    std::set<Item> out;
    for (const auto& s : sequences)
      for (const auto& step : s.steps) out.insert(step.begin(), step.end());
    return {out.begin(), out.end()};
  }

  friend bool operator==(const SequenceDatabase& a, const SequenceDatabase& b) {
    return a.sequences == b.sequences;
  }
};

namespace detail {

// Strict integer token parse; rejects partial consumption like "12x" or "3.5".
inline bool parse_token(const std::string& tok, long long& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace detail

/// Parses SPMF text: items are non-negative integers, `-1` ends an itemset,
/// `-2` ends a sequence. Blank lines and lines starting with `#` or `@` are
/// skipped. Sids are assigned 1-based in input order. When `limit` is set,
/// reading stops after that many sequences.
inline SequenceDatabase parse_spmf(std::istream& in,
                                   std::optional<std::size_t> limit = std::nullopt) {
  SequenceDatabase db;
  Itemset cur_itemset;
  std::vector<Itemset> cur_steps;
  std::string line;
  std::size_t line_no = 0;
  std::size_t last_content_line = 1;

  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#' || line[start] == '@') continue;
    last_content_line = line_no;

    std::istringstream toks(line);
    std::string tok;
    while (toks >> tok) {
      long long value = 0;
      if (!detail::parse_token(tok, value))
        throw parse_error(line_no, "malformed token '" + tok + "'");
      if (value == -1) {
        if (cur_itemset.empty())
          throw parse_error(line_no, "itemset with zero items before '-1'");
        cur_steps.push_back(normalize_itemset(std::move(cur_itemset)));
        cur_itemset.clear();
      } else if (value == -2) {
        if (!cur_itemset.empty())
          throw parse_error(line_no, "itemset not terminated by '-1' before '-2'");
        if (cur_steps.empty())
          throw parse_error(line_no, "sequence with zero itemsets before '-2'");
        Sequence seq;
        seq.sid = static_cast<std::uint32_t>(db.sequences.size() + 1);
        seq.steps = std::move(cur_steps);
        cur_steps.clear();
        db.sequences.push_back(std::move(seq));
        if (limit && db.sequences.size() >= *limit) return db;
      } else if (value < 0) {
        throw parse_error(line_no, "malformed token '" + tok + "'");
      } else if (value > static_cast<long long>(UINT32_MAX)) {
        throw parse_error(line_no, "item id out of range '" + tok + "'");
      } else {
        cur_itemset.push_back(static_cast<Item>(value));
      }
    }
  }
  if (!cur_itemset.empty() || !cur_steps.empty())
    throw parse_error(last_content_line, "missing '-2' at end of input");
  return db;
}

/// Parses SPMF text held in a string.
inline SequenceDatabase parse_spmf(const std::string& text,
                                   std::optional<std::size_t> limit = std::nullopt) {
  std::istringstream in(text);
  return parse_spmf(in, limit);
}

/// Loads an SPMF file; throws io_error when the file cannot be opened.
inline SequenceDatabase load_spmf_file(const std::string& path,
                                       std::optional<std::size_t> limit = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  return parse_spmf(in, limit);
}

/// Writes SPMF text: one sequence per line, single spaces, `\n` line ends.
inline void serialize_spmf(const SequenceDatabase& db, std::ostream& out) {
  for (const auto& seq : db.sequences) {
    bool first = true;
    for (const auto& step : seq.steps) {
      for (Item item : step) {
        if (!first) out << ' ';
        out << item;
        first = false;
      }
      out << ' ' << -1;
    }
    out << ' ' << -2 << '\n';
  }
}

inline std::string serialize_spmf(const SequenceDatabase& db) {
  std::ostringstream out;
  serialize_spmf(db, out);
  return out.str();
}

/// Result of the single-item check; `sid`/`position` locate the first offender.
struct SingleItemValidation {
  bool ok = true;
  std::uint32_t sid = 0;
  Pos position = 0;
};

/// Succeeds iff every itemset holds exactly one item (the compressible shape).
inline SingleItemValidation validate_single_item(const SequenceDatabase& db) {
  for (const auto& seq : db.sequences) {
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
      if (seq.steps[i].size() != 1)
        return {false, seq.sid, static_cast<Pos>(i + 1)};
    }
  }
  return {};
}

/// Database summary; `mean_length` is empty for an empty database.
struct DbStats {
  std::size_t sequence_count = 0;
  std::size_t alphabet_size = 0;
  std::size_t total_items = 0;
  std::optional<double> mean_length;
};

inline DbStats db_stats(const SequenceDatabase& db) {
  DbStats stats;
  stats.sequence_count = db.size();
  stats.alphabet_size = db.alphabet().size();
  stats.total_items = db.total_items();
  if (stats.sequence_count > 0)
    stats.mean_length = static_cast<double>(stats.total_items) /
                        static_cast<double>(stats.sequence_count);
  return stats;
}

}  // namespace comsr
