#pragma once

// Rule mining: threshold-driven enumeration and the all-pairs 1x1 base.

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "comsr/core.hpp"
#include "comsr/rules.hpp"
#include "comsr/seqdb.hpp"

namespace comsr {

/// Bounds on rule shape; kNoCap disables a bound.
struct SizeCaps {
  std::uint32_t max_antecedent = 4;
  std::uint32_t max_consequent = 1;
};

namespace detail {

inline std::uint64_t pair_key(Item x, Item y) {
  return (static_cast<std::uint64_t>(x) << 32) | y;
}

// Distinct ordered item pairs (x strictly before y) per sequence, merged
// into database-wide occurrence counts. Works for multi-item steps.
inline std::unordered_map<std::uint64_t, std::uint32_t> count_pairs(
    const SequenceDatabase& db) {
  std::unordered_map<std::uint64_t, std::uint32_t> counts;
  std::unordered_set<std::uint64_t> seq_pairs;
  std::unordered_set<Item> prev_seen;
  for (const auto& seq : db.sequences) {
    seq_pairs.clear();
    prev_seen.clear();
    for (const auto& step : seq.steps) {
      for (Item y : step)
        for (Item x : prev_seen)
          if (x != y) seq_pairs.insert(pair_key(x, y));
      prev_seen.insert(step.begin(), step.end());
    }
    for (std::uint64_t key : seq_pairs) ++counts[key];
  }
  return counts;
}

// Smallest occurrence count whose support fraction reaches minsup.
inline std::uint32_t support_threshold(double minsup, std::size_t db_size) {
  auto c = static_cast<std::uint32_t>(
      std::ceil(minsup * static_cast<double>(db_size) - 1e-9));
  return c > 0 ? c : 1;
}

struct MiningIndex {
  std::vector<ItemIndex> seq_index;
  std::unordered_map<Item, std::vector<std::uint32_t>> contain;

  explicit MiningIndex(const SequenceDatabase& db) {
    seq_index.reserve(db.size());
    for (std::uint32_t si = 0; si < db.size(); ++si) {
      seq_index.push_back(build_item_index(db.sequences[si]));
      for (const auto& [item, pos] : seq_index.back().first) contain[item].push_back(si);
    }
  }

  // Sequences containing every item of X, by sorted-list intersection.
  std::uint32_t antecedent_count(const Itemset& x) const {
    auto it = contain.find(x[0]);
    if (it == contain.end()) return 0;
    std::vector<std::uint32_t> acc = it->second;
    for (std::size_t i = 1; i < x.size() && !acc.empty(); ++i) {
      auto jt = contain.find(x[i]);
      if (jt == contain.end()) return 0;
      std::vector<std::uint32_t> next;
      std::set_intersection(acc.begin(), acc.end(), jt->second.begin(), jt->second.end(),
                            std::back_inserter(next));
      acc = std::move(next);
    }
    return static_cast<std::uint32_t>(acc.size());
  }
};

}  // namespace detail

/// Every rule {x} -> {y}, x != y, occurring in at least one sequence, with
/// exact stats. This is the mine_rules limit at vanishing minsup, minconf 0,
/// caps (1,1).
inline std::vector<MinedRule> mine_all_one_rules(const SequenceDatabase& db) {
  std::vector<MinedRule> out;
  if (db.empty()) return out;
  auto counts = detail::count_pairs(db);
  detail::MiningIndex index(db);
  double n = static_cast<double>(db.size());
  out.reserve(counts.size());
  for (const auto& [key, count] : counts) {
    Item x = static_cast<Item>(key >> 32);
    Item y = static_cast<Item>(key & 0xFFFFFFFFu);
    RuleStats stats;
    stats.support_count = count;
    stats.support = count / n;
    stats.antecedent_count =
        static_cast<std::uint32_t>(index.contain.at(x).size());
    stats.confidence = static_cast<double>(count) / stats.antecedent_count;
    out.emplace_back(SequentialRule::make({x}, {y}), stats);
  }
  std::sort(out.begin(), out.end(),
            [](const MinedRule& a, const MinedRule& b) { return a.text < b.text; });
  return out;
}

/// Exactly the rules with support >= minsup, confidence >= minconf, and sides
/// within the caps. Enumeration grows antecedents first, then consequents, in
/// ascending item order, pruning by support anti-monotonicity; confidence is
/// filtered last. Output is sorted by canonical text.
inline std::vector<MinedRule> mine_rules(const SequenceDatabase& db, double minsup,
                                         double minconf, SizeCaps caps = {}) {
  if (!(minsup > 0.0) || minsup > 1.0)
    throw std::invalid_argument("minsup must be in (0, 1]");
  if (minconf < 0.0 || minconf > 1.0)
    throw std::invalid_argument("minconf must be in [0, 1]");
  if (caps.max_antecedent < 1 || caps.max_consequent < 1)
    throw std::invalid_argument("size caps must be >= 1");

  std::vector<MinedRule> out;
  if (db.empty()) return out;

  const std::uint32_t min_count = detail::support_threshold(minsup, db.size());
  auto counts = detail::count_pairs(db);
  detail::MiningIndex index(db);

  // Frequent 1x1 seeds plus adjacency for the two growth directions.
  std::unordered_set<std::uint64_t> freq_pairs;
  std::unordered_map<Item, std::vector<Item>> antes_of;  // y -> {x : {x}->{y} frequent}
  std::unordered_map<Item, std::vector<Item>> conss_of;  // x -> {w : {x}->{w} frequent}
  for (const auto& [key, count] : counts) {
    if (count < min_count) continue;
    Item x = static_cast<Item>(key >> 32);
    Item y = static_cast<Item>(key & 0xFFFFFFFFu);
    freq_pairs.insert(key);
    antes_of[y].push_back(x);
    conss_of[x].push_back(y);
  }
  for (auto& [item, list] : antes_of) std::sort(list.begin(), list.end());
  for (auto& [item, list] : conss_of) std::sort(list.begin(), list.end());

  struct Node {
    Itemset x;
    Itemset y;
    std::vector<std::uint32_t> supp;  // supporting sequence indexes, ascending
  };

  // Support recount restricted to the parent's supporting sequences.
  auto recount = [&index](const Itemset& x, const Itemset& y,
                          const std::vector<std::uint32_t>& within) {
    std::vector<std::uint32_t> supp;
    SequentialRule probe;
    probe.antecedent = x;
    probe.consequent = y;
    for (std::uint32_t si : within)
      if (occurs(probe, index.seq_index[si])) supp.push_back(si);
    return supp;
  };

  std::vector<Node> frontier;
  for (std::uint64_t key : freq_pairs) {
    Item x = static_cast<Item>(key >> 32);
    Item y = static_cast<Item>(key & 0xFFFFFFFFu);
    auto common = index.contain.at(x);  // refine via containment of both items
    std::vector<std::uint32_t> both;
    std::set_intersection(common.begin(), common.end(), index.contain.at(y).begin(),
                          index.contain.at(y).end(), std::back_inserter(both));
    Node node{{x}, {y}, recount({x}, {y}, both)};
    frontier.push_back(std::move(node));
  }

  std::map<Itemset, std::uint32_t> ante_count_cache;
  auto antecedent_count = [&](const Itemset& x) {
    auto it = ante_count_cache.find(x);
    if (it != ante_count_cache.end()) return it->second;
    std::uint32_t c = index.antecedent_count(x);
    ante_count_cache.emplace(x, c);
    return c;
  };

  double n = static_cast<double>(db.size());
  auto emit = [&](const Node& node) {
    RuleStats stats;
    stats.support_count = static_cast<std::uint32_t>(node.supp.size());
    stats.support = stats.support_count / n;
    stats.antecedent_count = antecedent_count(node.x);
    stats.confidence = stats.antecedent_count == 0
                           ? 0.0
                           : static_cast<double>(stats.support_count) /
                                 stats.antecedent_count;
    if (static_cast<double>(stats.support_count) >=
        minconf * stats.antecedent_count - 1e-9) {
      SequentialRule rule;
      rule.antecedent = node.x;
      rule.consequent = node.y;
      out.emplace_back(std::move(rule), stats);
    }
  };

  while (!frontier.empty()) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      emit(node);
      // Antecedent growth happens while the consequent is still a singleton;
      // each rule is generated once, items joining in ascending order.
      if (node.y.size() == 1 && node.x.size() < caps.max_antecedent) {
        auto it = antes_of.find(node.y[0]);
        if (it != antes_of.end()) {
          for (Item z : it->second) {
            if (z <= node.x.back()) continue;
            if (std::binary_search(node.x.begin(), node.x.end(), z)) continue;
            Itemset x2 = node.x;
            x2.push_back(z);
            auto supp = recount(x2, node.y, node.supp);
            if (supp.size() >= min_count) next.push_back({std::move(x2), node.y, std::move(supp)});
          }
        }
      }
      if (node.y.size() < caps.max_consequent) {
        auto it = conss_of.find(node.x[0]);
        if (it != conss_of.end()) {
          for (Item w : it->second) {
            if (w <= node.y.back()) continue;
            if (std::binary_search(node.x.begin(), node.x.end(), w)) continue;
            bool all_frequent = true;
            for (std::size_t i = 1; i < node.x.size() && all_frequent; ++i)
              all_frequent = freq_pairs.count(detail::pair_key(node.x[i], w)) != 0;
            if (!all_frequent) continue;
            Itemset y2 = node.y;
            y2.push_back(w);
            auto supp = recount(node.x, y2, node.supp);
            if (supp.size() >= min_count) next.push_back({node.x, std::move(y2), std::move(supp)});
          }
        }
      }
    }
    frontier = std::move(next);
  }

  std::sort(out.begin(), out.end(),
            [](const MinedRule& a, const MinedRule& b) { return a.text < b.text; });
  return out;
}

/// The 1x1 subset of a mined rule set, input order preserved.
inline std::vector<MinedRule> initial_code(const std::vector<MinedRule>& rules) {
  std::vector<MinedRule> out;
  for (const auto& r : rules)
    if (r.rule.one_by_one()) out.push_back(r);
  return out;
}

}  // namespace comsr
