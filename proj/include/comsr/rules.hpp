#pragma once

// Sequential rules X -> Y over sequences, with support and confidence.

#include <cstdint>
#include <cstdio>
#include <string>
#include <unordered_map>
#include <vector>

#include "comsr/core.hpp"
#include "comsr/seqdb.hpp"

namespace comsr {

/// Implication between two disjoint non-empty unordered itemsets.
struct SequentialRule {
  Itemset antecedent;
  Itemset consequent;

  /// Normalizes both sides and enforces the rule invariants.
  static SequentialRule make(Itemset x, Itemset y) {
    SequentialRule r;
    r.antecedent = normalize_itemset(std::move(x));
    r.consequent = normalize_itemset(std::move(y));
    if (r.antecedent.empty()) throw std::invalid_argument("rule antecedent is empty");
    if (r.consequent.empty()) throw std::invalid_argument("rule consequent is empty");
    for (Item a : r.antecedent)
      if (std::binary_search(r.consequent.begin(), r.consequent.end(), a))
        throw std::invalid_argument("rule sides share item " + std::to_string(a));
    return r;
  }

  std::size_t size() const { return antecedent.size() + consequent.size(); }

  bool one_by_one() const { return antecedent.size() == 1 && consequent.size() == 1; }

  /// Canonical text form, e.g. "1,2 -> 3"; total order key for ties.
  std::string text() const {
    std::string out;
    for (std::size_t i = 0; i < antecedent.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(antecedent[i]);
    }
    out += " -> ";
    for (std::size_t i = 0; i < consequent.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(consequent[i]);
    }
    return out;
  }

  friend bool operator==(const SequentialRule& a, const SequentialRule& b) {
    return a.antecedent == b.antecedent && a.consequent == b.consequent;
  }
};

/// Frequency statistics of a rule against one database.
struct RuleStats {
  double support = 0.0;
  double confidence = 0.0;
  std::uint32_t support_count = 0;
  std::uint32_t antecedent_count = 0;
};

/// A rule bundled with its stats and cached canonical text.
struct MinedRule {
  SequentialRule rule;
  RuleStats stats;
  std::string text;

  MinedRule() = default;
  MinedRule(SequentialRule r, RuleStats s) : rule(std::move(r)), stats(s), text(rule.text()) {}
};

/// First and last positions of every item in one sequence.
struct ItemIndex {
  std::unordered_map<Item, Pos> first;
  std::unordered_map<Item, Pos> last;
};

inline ItemIndex build_item_index(const Sequence& seq) {
  ItemIndex idx;
  idx.first.reserve(seq.steps.size());
  idx.last.reserve(seq.steps.size());
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    Pos pos = static_cast<Pos>(i + 1);
    for (Item item : seq.steps[i]) {
      idx.first.emplace(item, pos);
      idx.last[item] = pos;
    }
  }
  return idx;
}

/// Occurrence test against a prebuilt index: some split k puts all antecedent
/// items at positions <= k and all consequent items strictly after k.
inline bool occurs(const SequentialRule& rule, const ItemIndex& idx) {
  Pos k = 0;
  for (Item x : rule.antecedent) {
    auto it = idx.first.find(x);
    if (it == idx.first.end()) return false;
    if (it->second > k) k = it->second;
  }
  for (Item y : rule.consequent) {
    auto it = idx.last.find(y);
    if (it == idx.last.end() || it->second <= k) return false;
  }
  return true;
}

/// Occurrence test for a single sequence.
inline bool occurs(const SequentialRule& rule, const Sequence& seq) {
  return occurs(rule, build_item_index(seq));
}

/// True iff every antecedent item appears somewhere in the sequence,
/// regardless of order. This is the confidence denominator condition.
inline bool contains_antecedent(const SequentialRule& rule, const ItemIndex& idx) {
  for (Item x : rule.antecedent)
    if (idx.first.find(x) == idx.first.end()) return false;
  return true;
}

/// Computes support and confidence in one database pass.
inline RuleStats evaluate_rule(const SequentialRule& rule, const SequenceDatabase& db) {
  if (db.empty()) throw std::invalid_argument("empty database");
  RuleStats stats;
  for (const auto& seq : db.sequences) {
    ItemIndex idx = build_item_index(seq);
    if (contains_antecedent(rule, idx)) {
      ++stats.antecedent_count;
      if (occurs(rule, idx)) ++stats.support_count;
    }
  }
  stats.support = static_cast<double>(stats.support_count) / static_cast<double>(db.size());
  stats.confidence = stats.antecedent_count == 0
                         ? 0.0
                         : static_cast<double>(stats.support_count) /
                               static_cast<double>(stats.antecedent_count);
  return stats;
}

/// Fraction of sequences in which the rule occurs.
inline double support(const SequentialRule& rule, const SequenceDatabase& db) {
  return evaluate_rule(rule, db).support;
}

/// Occurrences over sequences containing the whole antecedent; 0 when the
/// antecedent appears nowhere.
inline double confidence(const SequentialRule& rule, const SequenceDatabase& db) {
  return evaluate_rule(rule, db).confidence;
}

inline MinedRule make_mined_rule(SequentialRule rule, const SequenceDatabase& db) {
  RuleStats stats = evaluate_rule(rule, db);
  return MinedRule(std::move(rule), stats);
}

/// One-line form: "1,2 -> 3 sup=0.5000 conf=0.3333".
inline std::string serialize_rule_line(const MinedRule& mined) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), " sup=%.4f conf=%.4f", mined.stats.support,
                mined.stats.confidence);
  return mined.text + buf;
}

}  // namespace comsr
