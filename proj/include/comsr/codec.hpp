#pragma once

// Dictionary coding of single-item sequence databases: canonical code sets,
// greedy covering with position tokens, description lengths, lossless decode.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "comsr/core.hpp"
#include "comsr/mining.hpp"
#include "comsr/parallel.hpp"
#include "comsr/rules.hpp"
#include "comsr/seqdb.hpp"

namespace comsr {

/// How often one rule may re-cover the same sequence in phase 1.
enum class CoverPolicy { repeat, single };

/// Cost of a partial (leftover) use: two units (reference + position) or the
/// uniform three units a full 1x1 use would take.
enum class PartialCost { two, uniform };

struct CoverOptions {
  CoverPolicy policy = CoverPolicy::repeat;
  PartialCost partial_cost = PartialCost::two;
  unsigned threads = 0;  // 0 = hardware concurrency; COMSR_THREADS caps it
};

/// The coding dictionary: rules in canonical order, duplicate-free.
struct CodeSet {
  std::vector<MinedRule> rules;

  std::size_t size() const { return rules.size(); }
  bool empty() const { return rules.empty(); }
};

/// Canonical order: size descending, support descending, text ascending.
/// Throws on duplicate rules.
inline CodeSet canonical_sort(std::vector<MinedRule> rules) {
  std::unordered_set<std::string> seen;
  for (const MinedRule& r : rules)
    if (!seen.insert(r.text).second)
      throw std::invalid_argument("duplicate rule: " + r.text);
  std::sort(rules.begin(), rules.end(), [](const MinedRule& a, const MinedRule& b) {
    if (a.rule.size() != b.rule.size()) return a.rule.size() > b.rule.size();
    if (a.stats.support != b.stats.support) return a.stats.support > b.stats.support;
    return a.text < b.text;
  });
  return CodeSet{std::move(rules)};
}

enum class TokenKind { full, partial };
enum class PartialSide { antecedent, consequent };

/// One emitted code unit: a rule reference plus the covered positions.
/// Full tokens list antecedent positions in ascending item order, then
/// consequent positions in ascending item order.
struct CoverToken {
  std::uint32_t rule_index = 0;
  TokenKind kind = TokenKind::full;
  std::vector<Pos> positions;
  PartialSide partial_side = PartialSide::antecedent;
};

struct EncodedSequence {
  std::uint32_t sid = 0;
  std::vector<CoverToken> tokens;
  std::vector<std::pair<Pos, Item>> residual;  // ascending by position
};

struct RuleUsage {
  std::uint64_t full = 0;
  std::uint64_t partial = 0;
};

struct EncodedDatabase {
  std::vector<EncodedSequence> sequences;
  std::vector<RuleUsage> usage;  // indexed like the code set
  CoverOptions options;
  std::uint64_t covered_items = 0;
};

/// Description-length breakdown in abstract integer units.
struct LengthReport {
  std::uint64_t model_length = 0;
  std::uint64_t data_length = 0;
  std::uint64_t residual_length = 0;
  std::uint64_t total = 0;
};

namespace detail {

// Alive (uncovered) positions of one sequence, grouped by item.
struct Residual {
  std::unordered_map<Item, std::vector<Pos>> positions;
  std::size_t alive = 0;

  void erase(Item item, Pos pos) {
    auto it = positions.find(item);
    auto& list = it->second;
    list.erase(std::lower_bound(list.begin(), list.end(), pos));
    if (list.empty()) positions.erase(it);
    --alive;
  }
};

// Leftmost embedding: k is the minimal split covering the antecedent; each
// antecedent item binds its earliest alive position, each consequent item its
// earliest alive position after k. Returns false when no embedding exists.
inline bool find_embedding_in(const Residual& res, const SequentialRule& rule,
                              std::vector<Pos>& out) {
  Pos k = 0;
  for (Item x : rule.antecedent) {
    auto it = res.positions.find(x);
    if (it == res.positions.end()) return false;
    if (it->second.front() > k) k = it->second.front();
  }
  out.clear();
  out.reserve(rule.size());
  for (Item x : rule.antecedent) out.push_back(res.positions.find(x)->second.front());
  for (Item y : rule.consequent) {
    auto it = res.positions.find(y);
    if (it == res.positions.end() || it->second.back() <= k) return false;
    out.push_back(*std::upper_bound(it->second.begin(), it->second.end(), k));
  }
  return true;
}

inline Residual make_residual(const Sequence& seq) {
  Residual res;
  res.alive = seq.steps.size();
  for (std::size_t i = 0; i < seq.steps.size(); ++i)
    res.positions[seq.steps[i][0]].push_back(static_cast<Pos>(i + 1));
  return res;
}

}  // namespace detail

/// Leftmost embedding of a rule into an explicit residual (ascending
/// positions). Exposed for inspection; covering uses the same search.
inline std::optional<std::vector<Pos>> find_embedding(
    const SequentialRule& rule, const std::vector<std::pair<Pos, Item>>& residual) {
  detail::Residual res;
  res.alive = residual.size();
  for (const auto& [pos, item] : residual) res.positions[item].push_back(pos);
  for (auto& [item, list] : res.positions) std::sort(list.begin(), list.end());
  std::vector<Pos> out;
  if (!detail::find_embedding_in(res, rule, out)) return std::nullopt;
  return out;
}

/// Covers the database with the code set. Phase 1 walks rules in code-set
/// order and applies each to every sequence's residual (repeatedly under the
/// repeat policy). Phase 2 encodes a lone leftover item with the first 1x1
/// rule that carries the item on either side and occurs in the original
/// sequence. Sequences are independent, so covering parallelizes over them.
inline EncodedDatabase cover_database(const CodeSet& code, const SequenceDatabase& db,
                                      CoverOptions options = {}) {
  auto validation = validate_single_item(db);
  if (!validation.ok)
    throw std::invalid_argument(
        "multi-item itemset at sequence " + std::to_string(validation.sid) +
        " position " + std::to_string(validation.position));

  EncodedDatabase enc;
  enc.options = options;
  enc.sequences.resize(db.size());
  enc.usage.assign(code.size(), RuleUsage{});

  parallel_for(db.size(), options.threads, [&](std::size_t si) {
    const Sequence& seq = db.sequences[si];
    EncodedSequence& out = enc.sequences[si];
    out.sid = seq.sid;

    detail::Residual res = detail::make_residual(seq);
    std::vector<Pos> bound;
    for (std::uint32_t ri = 0; ri < code.size() && res.alive >= 2; ++ri) {
      const SequentialRule& rule = code.rules[ri].rule;
      if (rule.size() > res.alive) continue;
      while (detail::find_embedding_in(res, rule, bound)) {
        for (std::size_t i = 0; i < rule.antecedent.size(); ++i)
          res.erase(rule.antecedent[i], bound[i]);
        for (std::size_t j = 0; j < rule.consequent.size(); ++j)
          res.erase(rule.consequent[j], bound[rule.antecedent.size() + j]);
        out.tokens.push_back({ri, TokenKind::full, bound, PartialSide::antecedent});
        if (options.policy == CoverPolicy::single || rule.size() > res.alive) break;
      }
    }

    if (res.alive == 1) {
      Item item = res.positions.begin()->first;
      Pos pos = res.positions.begin()->second.front();
      ItemIndex original = build_item_index(seq);
      for (std::uint32_t ri = 0; ri < code.size(); ++ri) {
        const SequentialRule& rule = code.rules[ri].rule;
        if (!rule.one_by_one()) continue;
        PartialSide side;
        if (rule.antecedent[0] == item)
          side = PartialSide::antecedent;
        else if (rule.consequent[0] == item)
          side = PartialSide::consequent;
        else
          continue;
        if (!occurs(rule, original)) continue;
        out.tokens.push_back({ri, TokenKind::partial, {pos}, side});
        res.erase(item, pos);
        break;
      }
    }

    for (const auto& [item, list] : res.positions)
      for (Pos pos : list) out.residual.emplace_back(pos, item);
    std::sort(out.residual.begin(), out.residual.end());
  });

  for (const auto& seq : enc.sequences)
    for (const auto& token : seq.tokens) {
      if (token.kind == TokenKind::full)
        ++enc.usage[token.rule_index].full;
      else
        ++enc.usage[token.rule_index].partial;
      enc.covered_items += token.positions.size();
    }
  return enc;
}

/// L(H): rule count plus total item count over all rules, used or not.
inline std::uint64_t model_length(const CodeSet& code) {
  std::uint64_t total = code.size();
  for (const auto& r : code.rules) total += r.rule.size();
  return total;
}

/// L(D|H): full uses cost rule size + 1 (the positions plus the reference);
/// partial uses cost 2 units, or 3 under the uniform costing. Verifies the
/// recorded usage against the actual tokens.
inline std::uint64_t data_length(const EncodedDatabase& enc, const CodeSet& code) {
  if (enc.usage.size() != code.size())
    throw decode_error("usage table does not match code set size");
  std::vector<RuleUsage> actual(code.size());
  for (const auto& seq : enc.sequences)
    for (const auto& token : seq.tokens) {
      if (token.rule_index >= code.size()) throw decode_error("unknown rule index");
      if (token.kind == TokenKind::full)
        ++actual[token.rule_index].full;
      else
        ++actual[token.rule_index].partial;
    }
  std::uint64_t total = 0;
  std::uint64_t partial_unit = enc.options.partial_cost == PartialCost::two ? 2 : 3;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (actual[i].full != enc.usage[i].full || actual[i].partial != enc.usage[i].partial)
      throw decode_error("usage counts inconsistent with tokens for rule " +
                         code.rules[i].text);
    total += enc.usage[i].full * (code.rules[i].rule.size() + 1);
    total += enc.usage[i].partial * partial_unit;
  }
  return total;
}

/// Covers the database and reports every length component.
inline std::pair<EncodedDatabase, LengthReport> evaluate_code(const CodeSet& code,
                                                              const SequenceDatabase& db,
                                                              CoverOptions options = {}) {
  EncodedDatabase enc = cover_database(code, db, options);
  LengthReport report;
  report.model_length = model_length(code);
  report.data_length = data_length(enc, code);
  report.residual_length = db.total_items() - enc.covered_items;
  report.total = report.model_length + report.data_length + report.residual_length;
  return {std::move(enc), report};
}

/// Total description length L(H) + L(D|H) + one unit per residual item.
inline LengthReport compress_length(const CodeSet& code, const SequenceDatabase& db,
                                    CoverOptions options = {}) {
  return evaluate_code(code, db, options).second;
}

/// Rebuilds the exact original database from tokens and residuals.
/// Fails on overlapping positions, position gaps, or rule mismatches.
inline SequenceDatabase decode(const EncodedDatabase& enc, const CodeSet& code) {
  SequenceDatabase db;
  db.sequences.reserve(enc.sequences.size());
  for (const auto& es : enc.sequences) {
    std::map<Pos, Item> placed;
    auto place = [&placed](Pos pos, Item item) {
      if (!placed.emplace(pos, item).second)
        throw decode_error("overlapping position " + std::to_string(pos));
    };
    for (const auto& token : es.tokens) {
      if (token.rule_index >= code.size()) throw decode_error("unknown rule index");
      const SequentialRule& rule = code.rules[token.rule_index].rule;
      if (token.kind == TokenKind::full) {
        if (token.positions.size() != rule.size())
          throw decode_error("token arity mismatch for rule " +
                             code.rules[token.rule_index].text);
        for (std::size_t i = 0; i < rule.antecedent.size(); ++i)
          place(token.positions[i], rule.antecedent[i]);
        for (std::size_t j = 0; j < rule.consequent.size(); ++j)
          place(token.positions[rule.antecedent.size() + j], rule.consequent[j]);
      } else {
        if (!rule.one_by_one()) throw decode_error("partial token on a non-1x1 rule");
        if (token.positions.size() != 1) throw decode_error("partial token arity mismatch");
        Item item = token.partial_side == PartialSide::antecedent ? rule.antecedent[0]
                                                                  : rule.consequent[0];
        place(token.positions[0], item);
      }
    }
    for (const auto& [pos, item] : es.residual) place(pos, item);
    if (placed.empty()) throw decode_error("empty encoded sequence");
    if (placed.begin()->first != 1 ||
        placed.rbegin()->first != static_cast<Pos>(placed.size()))
      throw decode_error("position gap in sequence " + std::to_string(es.sid));
    Sequence seq;
    seq.sid = es.sid;
    seq.steps.reserve(placed.size());
    for (const auto& [pos, item] : placed) seq.steps.push_back(Itemset{item});
    db.sequences.push_back(std::move(seq));
  }
  return db;
}

/// Fraction of the database's items covered by any token.
inline double compression_ratio(const EncodedDatabase& enc, const SequenceDatabase& db) {
  if (db.empty()) throw std::invalid_argument("empty database");
  return static_cast<double>(enc.covered_items) /
         static_cast<double>(db.total_items());
}

/// Distinct rules with any use in the encoding.
inline std::uint64_t used_rule_count(const EncodedDatabase& enc) {
  std::uint64_t n = 0;
  for (const auto& u : enc.usage)
    if (u.full + u.partial > 0) ++n;
  return n;
}

}  // namespace comsr
