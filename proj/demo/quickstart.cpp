// Minimal library walkthrough: mine rules from a toy database, let the MDL
// greedy pick a code set, inspect the encoding, and verify the round trip.

#include <cstdio>

#include "comsr/comsr.hpp"

int main() {
  // Six identical sessions: a strong repeated pattern the greedy can exploit.
  const char* spmf =
      "1 -1 2 -1 3 -1 4 -1 -2\n"
      "1 -1 2 -1 3 -1 4 -1 -2\n"
      "1 -1 2 -1 3 -1 4 -1 -2\n"
      "1 -1 2 -1 3 -1 4 -1 -2\n"
      "1 -1 2 -1 3 -1 4 -1 -2\n"
      "1 -1 2 -1 3 -1 4 -1 -2\n";
  comsr::SequenceDatabase db = comsr::parse_spmf(std::string(spmf));

  comsr::CompressionRun run =
      comsr::comsr_non(db, 1.0, 1.0, comsr::SizeCaps{2, 2});

  std::printf("initial total %llu -> final total %llu (ratio %.2f)\n",
              (unsigned long long)run.initial_report.total,
              (unsigned long long)run.final_report.total, run.ratio);
  std::printf("candidates tried %llu, accepted %llu\n",
              (unsigned long long)run.candidate_count,
              (unsigned long long)run.accepted);
  for (const auto& rule : run.accepted_rules)
    std::printf("accepted: %s\n", comsr::serialize_rule_line(rule).c_str());

  comsr::SequenceDatabase decoded = comsr::decode(run.encoding, run.code);
  std::printf("lossless: %s\n", decoded == db ? "yes" : "no");
  return 0;
}
