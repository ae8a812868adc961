#pragma once

// Brute-force reference implementations for testing. Deliberately naive and
// independent of the mining/covering search code; shares only domain types.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "comsr/codec.hpp"
#include "comsr/core.hpp"
#include "comsr/rules.hpp"
#include "comsr/seqdb.hpp"

namespace comsr {

/// Instance-size bounds keeping exhaustive enumeration tractable.
struct OracleConfig {
  std::size_t max_sequences = 10;
  std::size_t max_alphabet = 8;
  std::size_t max_length = 10;
  std::uint64_t seed = 1;  // consumed by randomized test drivers
};

namespace oracle_detail {

// Plain split-point scan, quadratic on purpose.
inline bool naive_occurs(const Itemset& x, const Itemset& y, const Sequence& seq) {
  auto side_holds = [&seq](const Itemset& side, std::size_t from, std::size_t to) {
    for (Item item : side) {
      bool found = false;
      for (std::size_t p = from; p < to && !found; ++p)
        for (Item other : seq.steps[p])
          if (other == item) {
            found = true;
            break;
          }
      if (!found) return false;
    }
    return true;
  };
  std::size_t n = seq.steps.size();
  for (std::size_t k = 1; k < n; ++k)
    if (side_holds(x, 0, k) && side_holds(y, k, n)) return true;
  return false;
}

inline bool naive_contains(const Itemset& side, const Sequence& seq) {
  for (Item item : side) {
    bool found = false;
    for (const auto& step : seq.steps) {
      for (Item other : step)
        if (other == item) {
          found = true;
          break;
        }
      if (found) break;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace oracle_detail

/// Enumerates every disjoint non-empty (X, Y) pair within the caps, scoring
/// each by direct scans, and filters by the thresholds. Output sorted by text.
inline std::vector<MinedRule> brute_force_rules(const SequenceDatabase& db, double minsup,
                                                double minconf, SizeCaps caps = {},
                                                OracleConfig config = {}) {
  if (db.size() > config.max_sequences)
    throw std::invalid_argument("oracle bounds exceeded: sequences");
  std::vector<Item> alphabet = db.alphabet();
  if (alphabet.size() > config.max_alphabet)
    throw std::invalid_argument("oracle bounds exceeded: alphabet");
  for (const auto& seq : db.sequences)
    if (seq.steps.size() > config.max_length)
      throw std::invalid_argument("oracle bounds exceeded: sequence length");
  if (!(minsup > 0.0) || minsup > 1.0)
    throw std::invalid_argument("minsup must be in (0, 1]");
  if (minconf < 0.0 || minconf > 1.0)
    throw std::invalid_argument("minconf must be in [0, 1]");

  std::vector<MinedRule> out;
  double n = static_cast<double>(db.size());
  Itemset x, y;

  auto score = [&]() {
    if (x.empty() || y.empty()) return;
    if (x.size() > caps.max_antecedent || y.size() > caps.max_consequent) return;
    std::uint32_t support_count = 0;
    std::uint32_t antecedent_count = 0;
    for (const auto& seq : db.sequences) {
      if (!oracle_detail::naive_contains(x, seq)) continue;
      ++antecedent_count;
      if (oracle_detail::naive_occurs(x, y, seq)) ++support_count;
    }
    RuleStats stats;
    stats.support_count = support_count;
    stats.antecedent_count = antecedent_count;
    stats.support = support_count / n;
    stats.confidence =
        antecedent_count == 0 ? 0.0 : static_cast<double>(support_count) / antecedent_count;
    if (stats.support < minsup - 1e-9) return;
    if (static_cast<double>(support_count) < minconf * antecedent_count - 1e-9) return;
    out.emplace_back(SequentialRule::make(x, y), stats);
  };

  // Three-way assignment of each alphabet item: skip, antecedent, consequent.
  auto assign = [&](auto&& self, std::size_t i) -> void {
    if (i == alphabet.size()) {
      score();
      return;
    }
    self(self, i + 1);
    x.push_back(alphabet[i]);
    self(self, i + 1);
    x.pop_back();
    y.push_back(alphabet[i]);
    self(self, i + 1);
    y.pop_back();
  };
  if (!db.empty()) assign(assign, 0);

  std::sort(out.begin(), out.end(),
            [](const MinedRule& a, const MinedRule& b) { return a.text < b.text; });
  return out;
}

/// Exhaustive code-set search: evaluates every subset of `pool` of size <= k
/// unioned with the mandatory 1x1 `base`, returning the shortest total.
inline std::pair<CodeSet, std::uint64_t> best_code_subset(
    const SequenceDatabase& db, const std::vector<MinedRule>& pool, std::size_t k,
    const std::vector<MinedRule>& base, CoverOptions options = {}) {
  if (pool.size() > 12) throw std::invalid_argument("oracle pool too large");

  CodeSet best_code = canonical_sort(base);
  std::uint64_t best_total = compress_length(best_code, db, options).total;
  for (std::uint64_t mask = 1; mask < (1ULL << pool.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > k) continue;
    std::vector<MinedRule> rules = base;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (mask & (1ULL << i)) rules.push_back(pool[i]);
    CodeSet code = canonical_sort(std::move(rules));
    std::uint64_t total = compress_length(code, db, options).total;
    if (total < best_total) {
      best_total = total;
      best_code = std::move(code);
    }
  }
  return {std::move(best_code), best_total};
}

}  // namespace comsr
