#pragma once

// JSON forms of rules, code sets, encodings, and run reports, plus the
// file-pair archive format (code set + encoded database) used by the CLI.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "comsr/codec.hpp"
#include "comsr/compress.hpp"
#include "comsr/core.hpp"
#include "comsr/rules.hpp"
#include "comsr/seqdb.hpp"

namespace comsr {

using json = nlohmann::json;

inline json rule_to_json(const MinedRule& r) {
  return json{{"antecedent", r.rule.antecedent},
              {"consequent", r.rule.consequent},
              {"support", r.stats.support},
              {"confidence", r.stats.confidence},
              {"support_count", r.stats.support_count},
              {"antecedent_count", r.stats.antecedent_count},
              {"text", r.text}};
}

inline MinedRule rule_from_json(const json& j) {
  SequentialRule rule = SequentialRule::make(j.at("antecedent").get<Itemset>(),
                                             j.at("consequent").get<Itemset>());
  RuleStats stats;
  stats.support = j.at("support").get<double>();
  stats.confidence = j.at("confidence").get<double>();
  stats.support_count = j.at("support_count").get<std::uint32_t>();
  stats.antecedent_count = j.value("antecedent_count", 0u);
  return MinedRule(std::move(rule), stats);
}

/// Code set with each rule's canonical order index.
inline json code_set_to_json(const CodeSet& code) {
  json rules = json::array();
  for (std::size_t i = 0; i < code.size(); ++i) {
    json r = rule_to_json(code.rules[i]);
    r["index"] = i;
    rules.push_back(std::move(r));
  }
  return json{{"rules", std::move(rules)}};
}

inline CodeSet code_set_from_json(const json& j) {
  std::vector<MinedRule> rules;
  const json& arr = j.at("rules");
  rules.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (arr[i].value("index", i) != i)
      throw decode_error("code set indexes out of order");
    rules.push_back(rule_from_json(arr[i]));
  }
  // The stored order must already be canonical; re-sorting verifies it.
  CodeSet code = canonical_sort(std::move(rules));
  for (std::size_t i = 0; i < code.size(); ++i)
    if (code.rules[i].text != arr[i].at("text").get<std::string>())
      throw decode_error("code set is not in canonical order");
  return code;
}

inline const char* cover_policy_name(CoverPolicy p) {
  return p == CoverPolicy::repeat ? "repeat" : "single";
}

inline const char* partial_cost_name(PartialCost c) {
  return c == PartialCost::two ? "two" : "uniform";
}

inline json encoded_to_json(const EncodedDatabase& enc) {
  json seqs = json::array();
  for (const auto& es : enc.sequences) {
    json tokens = json::array();
    for (const auto& t : es.tokens) {
      json tok{{"rule", t.rule_index},
               {"kind", t.kind == TokenKind::full ? "full" : "partial"},
               {"positions", t.positions}};
      if (t.kind == TokenKind::partial)
        tok["side"] =
            t.partial_side == PartialSide::antecedent ? "antecedent" : "consequent";
      tokens.push_back(std::move(tok));
    }
    json residual = json::array();
    for (const auto& [pos, item] : es.residual) residual.push_back({pos, item});
    seqs.push_back(json{
        {"sid", es.sid}, {"tokens", std::move(tokens)}, {"residual", std::move(residual)}});
  }
  json usage = json::array();
  for (std::size_t i = 0; i < enc.usage.size(); ++i)
    if (enc.usage[i].full + enc.usage[i].partial > 0)
      usage.push_back(json{
          {"rule", i}, {"full", enc.usage[i].full}, {"partial", enc.usage[i].partial}});
  return json{{"options",
               {{"cover", cover_policy_name(enc.options.policy)},
                {"partial_cost", partial_cost_name(enc.options.partial_cost)}}},
              {"covered_items", enc.covered_items},
              {"sequences", std::move(seqs)},
              {"usage", std::move(usage)}};
}

inline EncodedDatabase encoded_from_json(const json& j, const CodeSet& code) {
  EncodedDatabase enc;
  const json& options = j.at("options");
  std::string cover = options.at("cover").get<std::string>();
  if (cover == "repeat")
    enc.options.policy = CoverPolicy::repeat;
  else if (cover == "single")
    enc.options.policy = CoverPolicy::single;
  else
    throw decode_error("unknown cover policy '" + cover + "'");
  std::string cost = options.at("partial_cost").get<std::string>();
  if (cost == "two")
    enc.options.partial_cost = PartialCost::two;
  else if (cost == "uniform")
    enc.options.partial_cost = PartialCost::uniform;
  else
    throw decode_error("unknown partial cost '" + cost + "'");

  enc.covered_items = j.at("covered_items").get<std::uint64_t>();
  enc.usage.assign(code.size(), RuleUsage{});
  for (const json& u : j.at("usage")) {
    auto index = u.at("rule").get<std::size_t>();
    if (index >= code.size()) throw decode_error("unknown rule index in usage");
    enc.usage[index].full = u.at("full").get<std::uint64_t>();
    enc.usage[index].partial = u.at("partial").get<std::uint64_t>();
  }
  for (const json& s : j.at("sequences")) {
    EncodedSequence es;
    es.sid = s.at("sid").get<std::uint32_t>();
    for (const json& t : s.at("tokens")) {
      CoverToken token;
      token.rule_index = t.at("rule").get<std::uint32_t>();
      std::string kind = t.at("kind").get<std::string>();
      if (kind == "full")
        token.kind = TokenKind::full;
      else if (kind == "partial")
        token.kind = TokenKind::partial;
      else
        throw decode_error("unknown token kind '" + kind + "'");
      token.positions = t.at("positions").get<std::vector<Pos>>();
      if (token.kind == TokenKind::partial) {
        std::string side = t.at("side").get<std::string>();
        if (side == "antecedent")
          token.partial_side = PartialSide::antecedent;
        else if (side == "consequent")
          token.partial_side = PartialSide::consequent;
        else
          throw decode_error("unknown partial side '" + side + "'");
      }
      es.tokens.push_back(std::move(token));
    }
    for (const json& r : s.at("residual"))
      es.residual.emplace_back(r.at(0).get<Pos>(), r.at(1).get<Item>());
    enc.sequences.push_back(std::move(es));
  }
  return enc;
}

inline json length_report_to_json(const LengthReport& r) {
  return json{{"model_length", r.model_length},
              {"data_length", r.data_length},
              {"residual_length", r.residual_length},
              {"total", r.total}};
}

/// Full run record: configuration, length breakdowns, and the final rules
/// with stats and usage counts.
inline json run_to_json(const CompressionRun& run) {
  json rules = json::array();
  for (std::size_t i = 0; i < run.code.size(); ++i) {
    json r = rule_to_json(run.code.rules[i]);
    r["index"] = i;
    r["full_uses"] = run.encoding.usage[i].full;
    r["partial_uses"] = run.encoding.usage[i].partial;
    r["line"] = serialize_rule_line(run.code.rules[i]);
    rules.push_back(std::move(r));
  }
  json accepted = json::array();
  for (const auto& r : run.accepted_rules) accepted.push_back(r.text);
  return json{{"mode", mode_name(run.mode)},
              {"minsup", run.minsup},
              {"minconf", run.minconf},
              {"max_antecedent", run.caps.max_antecedent},
              {"max_consequent", run.caps.max_consequent},
              {"cover", cover_policy_name(run.options.policy)},
              {"partial_cost", partial_cost_name(run.options.partial_cost)},
              {"db_sequences", run.db_sequences},
              {"db_total_items", run.db_total_items},
              {"initial", length_report_to_json(run.initial_report)},
              {"final", length_report_to_json(run.final_report)},
              {"compression_ratio", run.ratio},
              {"candidate_count", run.candidate_count},
              {"accepted", run.accepted},
              {"rejected", run.rejected},
              {"accepted_totals", run.accepted_totals},
              {"accepted_rules", std::move(accepted)},
              {"initial_used_rules", run.initial_used_rules},
              {"used_rules", run.used_rules},
              {"final_rule_count", run.code.size()},
              {"loop_seconds", run.loop_seconds},
              {"rules", std::move(rules)}};
}

inline json comparison_to_json(const RunComparison& cmp) {
  json below = json::array();
  for (const auto& r : cmp.below_threshold) below.push_back(r.text);
  return json{{"ratio_delta", cmp.ratio_delta},
              {"rule_count_delta", cmp.rule_count_delta},
              {"runtime_delta", cmp.runtime_delta},
              {"below_threshold_rules", std::move(below)}};
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw io_error("write failed for '" + path + "'");
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace comsr
