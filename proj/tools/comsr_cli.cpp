// Command-line front end: compression runs, threshold grids, archive decode.
//
// Exit codes: 0 success, 1 parse/validation error, 2 round-trip or archive
// consistency failure, 3 I/O error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "comsr/comsr.hpp"

namespace {

struct CommonConfig {
  std::string input;
  std::size_t limit = 0;  // 0 = no truncation
  std::string mode = "non";
  double minsup = 0.5;
  double minconf = 0.5;
  std::uint32_t max_ante = 4;
  std::uint32_t max_cons = 1;
  std::string cover = "repeat";
  std::string partial_cost = "two";
  std::string report_path;
  std::string codeset_path;
  std::string archive_path;
};

struct GridConfig {
  std::string vary = "minsup";
  double from = 0.0;
  double to = 0.0;
  double step = 0.1;
  std::string csv_path;
};

void add_common_flags(CLI::App* cmd, CommonConfig& cfg) {
  cmd->add_option("--input", cfg.input, "SPMF sequence database")->required();
  cmd->add_option("--limit", cfg.limit, "keep only the first N sequences");
  cmd->add_option("--mode", cfg.mode, "base code set: non|ful")
      ->check(CLI::IsMember({"non", "ful"}));
  cmd->add_option("--minsup", cfg.minsup, "minimum support in (0,1]");
  cmd->add_option("--minconf", cfg.minconf, "minimum confidence in (0,1]");
  cmd->add_option("--max-ante", cfg.max_ante, "antecedent size cap");
  cmd->add_option("--max-cons", cfg.max_cons, "consequent size cap");
  cmd->add_option("--cover", cfg.cover, "rule application per sequence: repeat|single")
      ->check(CLI::IsMember({"repeat", "single"}));
  cmd->add_option("--partial-cost", cfg.partial_cost, "leftover use cost: two|uniform")
      ->check(CLI::IsMember({"two", "uniform"}));
  cmd->add_option("--report", cfg.report_path, "write run report JSON here");
  cmd->add_option("--codeset", cfg.codeset_path, "write code set JSON here");
  cmd->add_option("--archive", cfg.archive_path, "write encoded archive JSON here");
}

bool threshold_ok(double v) { return v > 0.0 && v <= 1.0; }

int validate_thresholds(const CommonConfig& cfg) {
  if (!threshold_ok(cfg.minsup)) {
    std::cerr << "error: --minsup must be in (0,1]\n";
    return 1;
  }
  if (!threshold_ok(cfg.minconf)) {
    std::cerr << "error: --minconf must be in (0,1]\n";
    return 1;
  }
  if (cfg.max_ante < 1 || cfg.max_cons < 1) {
    std::cerr << "error: size caps must be >= 1\n";
    return 1;
  }
  return 0;
}

std::optional<std::size_t> limit_opt(const CommonConfig& cfg) {
  if (cfg.limit == 0) return std::nullopt;
  return cfg.limit;
}

comsr::CoverOptions cover_options(const CommonConfig& cfg) {
  comsr::CoverOptions options;
  options.policy =
      cfg.cover == "repeat" ? comsr::CoverPolicy::repeat : comsr::CoverPolicy::single;
  options.partial_cost = cfg.partial_cost == "two" ? comsr::PartialCost::two
                                                   : comsr::PartialCost::uniform;
  return options;
}

comsr::CompressionRun execute_run(const comsr::SequenceDatabase& db,
                                  const CommonConfig& cfg) {
  comsr::SizeCaps caps{cfg.max_ante, cfg.max_cons};
  comsr::CoverOptions options = cover_options(cfg);
  return cfg.mode == "non"
             ? comsr::comsr_non(db, cfg.minsup, cfg.minconf, caps, options)
             : comsr::comsr_ful(db, cfg.minsup, cfg.minconf, caps, options);
}

void print_run_summary(const comsr::CompressionRun& run) {
  std::printf("mode=%s minsup=%.4f minconf=%.4f\n", comsr::mode_name(run.mode),
              run.minsup, run.minconf);
  std::printf("initial: model=%llu data=%llu residual=%llu total=%llu\n",
              (unsigned long long)run.initial_report.model_length,
              (unsigned long long)run.initial_report.data_length,
              (unsigned long long)run.initial_report.residual_length,
              (unsigned long long)run.initial_report.total);
  std::printf("final:   model=%llu data=%llu residual=%llu total=%llu\n",
              (unsigned long long)run.final_report.model_length,
              (unsigned long long)run.final_report.data_length,
              (unsigned long long)run.final_report.residual_length,
              (unsigned long long)run.final_report.total);
  std::printf("candidates=%llu accepted=%llu rejected=%llu\n",
              (unsigned long long)run.candidate_count, (unsigned long long)run.accepted,
              (unsigned long long)run.rejected);
  std::printf("final_rule_count=%zu initial_used_rules=%llu used_rules=%llu\n",
              run.code.size(), (unsigned long long)run.initial_used_rules,
              (unsigned long long)run.used_rules);
  std::printf("compression_ratio=%.4f loop_seconds=%.4f\n", run.ratio, run.loop_seconds);
}

int cmd_compress(const CommonConfig& cfg) {
  if (int rc = validate_thresholds(cfg)) return rc;
  comsr::SequenceDatabase db = comsr::load_spmf_file(cfg.input, limit_opt(cfg));
  auto validation = comsr::validate_single_item(db);
  if (!validation.ok) {
    std::cerr << "error: itemset with more than one item at sequence " << validation.sid
              << " position " << validation.position << "\n";
    return 1;
  }

  comsr::CompressionRun run = execute_run(db, cfg);

  comsr::SequenceDatabase decoded = comsr::decode(run.encoding, run.code);
  if (!(decoded == db)) {
    std::cerr << "error: decoded database differs from input\n";
    return 2;
  }

  if (!cfg.report_path.empty())
    comsr::write_text_file(cfg.report_path, comsr::run_to_json(run).dump(2) + "\n");
  if (!cfg.codeset_path.empty())
    comsr::write_text_file(cfg.codeset_path,
                           comsr::code_set_to_json(run.code).dump(2) + "\n");
  if (!cfg.archive_path.empty())
    comsr::write_text_file(cfg.archive_path,
                           comsr::encoded_to_json(run.encoding).dump(2) + "\n");

  print_run_summary(run);
  return 0;
}

int cmd_grid(const CommonConfig& cfg, const GridConfig& grid) {
  if (int rc = validate_thresholds(cfg)) return rc;
  if (!threshold_ok(grid.from) || !threshold_ok(grid.to) || grid.from > grid.to) {
    std::cerr << "error: grid range must satisfy 0 < from <= to <= 1\n";
    return 1;
  }
  if (!(grid.step > 0.0)) {
    std::cerr << "error: --step must be positive\n";
    return 1;
  }

  comsr::SequenceDatabase db = comsr::load_spmf_file(cfg.input, limit_opt(cfg));
  auto validation = comsr::validate_single_item(db);
  if (!validation.ok) {
    std::cerr << "error: itemset with more than one item at sequence " << validation.sid
              << " position " << validation.position << "\n";
    return 1;
  }

  std::string csv = "minsup,minconf,mode,final_rule_count,compression_ratio,total_length,loop_seconds\n";
  for (std::size_t i = 0;; ++i) {
    double value = grid.from + static_cast<double>(i) * grid.step;
    if (value > grid.to + grid.step * 1e-6) break;
    CommonConfig point = cfg;
    if (grid.vary == "minsup")
      point.minsup = value;
    else
      point.minconf = value;

    char prefix[64];
    std::snprintf(prefix, sizeof(prefix), "%.4f,%.4f,%s,", point.minsup, point.minconf,
                  point.mode.c_str());
    try {
      comsr::CompressionRun run = execute_run(db, point);
      char row[160];
      std::snprintf(row, sizeof(row), "%llu,%.4f,%llu,%.4f\n",
                    (unsigned long long)run.code.size(), run.ratio,
                    (unsigned long long)run.final_report.total, run.loop_seconds);
      csv += prefix;
      csv += row;
      std::printf("grid %s=%.4f: rules=%zu ratio=%.4f total=%llu\n", grid.vary.c_str(),
                  value, run.code.size(), run.ratio,
                  (unsigned long long)run.final_report.total);
      std::fflush(stdout);
    } catch (const std::exception& e) {
      // Record the failed point and keep sweeping.
      csv += prefix;
      csv += ",,,\n";
      std::cerr << "grid point " << grid.vary << "=" << value << " failed: " << e.what()
                << "\n";
    }
  }
  comsr::write_text_file(grid.csv_path, csv);
  return 0;
}

int cmd_decode(const std::string& archive_path, const std::string& codeset_path,
               const std::string& output_path) {
  comsr::json codeset_json = comsr::json::parse(comsr::read_text_file(codeset_path));
  comsr::CodeSet code = comsr::code_set_from_json(codeset_json);
  comsr::json archive_json = comsr::json::parse(comsr::read_text_file(archive_path));
  comsr::EncodedDatabase enc = comsr::encoded_from_json(archive_json, code);
  comsr::data_length(enc, code);  // verifies usage against tokens
  comsr::SequenceDatabase db = comsr::decode(enc, code);
  comsr::write_text_file(output_path, comsr::serialize_spmf(db));
  std::printf("decoded %zu sequences, %zu items\n", db.size(), db.total_items());
  return 0;
}

int cmd_stats(const std::string& input, std::size_t limit) {
  comsr::SequenceDatabase db = comsr::load_spmf_file(
      input, limit == 0 ? std::nullopt : std::optional<std::size_t>(limit));
  comsr::DbStats stats = comsr::db_stats(db);
  std::printf("sequences=%zu alphabet=%zu total_items=%zu\n", stats.sequence_count,
              stats.alphabet_size, stats.total_items);
  if (stats.mean_length)
    std::printf("mean_length=%.3f\n", *stats.mean_length);
  else
    std::printf("mean_length=undefined\n");
  auto validation = comsr::validate_single_item(db);
  if (validation.ok)
    std::printf("single_item=yes\n");
  else
    std::printf("single_item=no (sequence %u position %u)\n", validation.sid,
                validation.position);
  return 0;
}

int cmd_oracle(const CommonConfig& cfg) {
  if (int rc = validate_thresholds(cfg)) return rc;
  comsr::SequenceDatabase db = comsr::load_spmf_file(cfg.input, limit_opt(cfg));
  comsr::SizeCaps caps{cfg.max_ante, cfg.max_cons};
  auto rules = comsr::brute_force_rules(db, cfg.minsup, cfg.minconf, caps);
  for (const auto& r : rules) std::printf("%s\n", comsr::serialize_rule_line(r).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compresses single-item sequence databases with an MDL-selected "
               "sequential-rule code set"};
  app.require_subcommand(1);

  CommonConfig compress_cfg;
  CLI::App* compress = app.add_subcommand("compress", "run one compression");
  add_common_flags(compress, compress_cfg);

  CommonConfig grid_common;
  GridConfig grid_cfg;
  CLI::App* grid = app.add_subcommand("grid", "sweep one threshold, emit CSV");
  add_common_flags(grid, grid_common);
  grid->add_option("--vary", grid_cfg.vary, "threshold to sweep: minsup|minconf")
      ->required()
      ->check(CLI::IsMember({"minsup", "minconf"}));
  grid->add_option("--from", grid_cfg.from, "sweep start")->required();
  grid->add_option("--to", grid_cfg.to, "sweep end")->required();
  grid->add_option("--step", grid_cfg.step, "sweep step")->required();
  grid->add_option("--csv", grid_cfg.csv_path, "write the series CSV here")->required();

  std::string decode_archive, decode_codeset, decode_output;
  CLI::App* decode = app.add_subcommand("decode", "restore SPMF text from an archive");
  decode->add_option("--archive", decode_archive, "encoded archive JSON")->required();
  decode->add_option("--codeset", decode_codeset, "code set JSON")->required();
  decode->add_option("--output", decode_output, "SPMF output path")->required();

  std::string stats_input;
  std::size_t stats_limit = 0;
  CLI::App* stats = app.add_subcommand("stats", "summarize a database");
  stats->add_option("--input", stats_input, "SPMF sequence database")->required();
  stats->add_option("--limit", stats_limit, "keep only the first N sequences");

  CommonConfig oracle_cfg;
  CLI::App* oracle = app.add_subcommand("oracle", "brute-force rule listing");
  add_common_flags(oracle, oracle_cfg);
  oracle->group("");  // debugging helper, hidden from --help

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (compress->parsed()) return cmd_compress(compress_cfg);
    if (grid->parsed()) return cmd_grid(grid_common, grid_cfg);
    if (decode->parsed()) return cmd_decode(decode_archive, decode_codeset, decode_output);
    if (stats->parsed()) return cmd_stats(stats_input, stats_limit);
    if (oracle->parsed()) return cmd_oracle(oracle_cfg);
  } catch (const comsr::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const comsr::decode_error& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return 2;
  } catch (const comsr::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
