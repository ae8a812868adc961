// End-to-end exercises of the command-line tool: exit codes, emitted files,
// archive round trips, grids, and tamper detection.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "comsr/comsr.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string cli_binary() {
  const char* env = std::getenv("COMSR_CLI");
  return env ? env : "./comsr";
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    static int counter = 0;
    dir_ = fs::temp_directory_path() /
           ("comsr_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  fs::path write(const std::string& name, const std::string& content) const {
    fs::path p = path(name);
    std::ofstream out(p);
    out << content;
    return p;
  }

  RunResult run(const std::string& args) const {
    fs::path out = path("stdout.log");
    fs::path err = path("stderr.log");
    std::string cmd = "\"" + cli_binary() + "\" " + args + " > \"" + out.string() +
                      "\" 2> \"" + err.string() + "\"";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  // Canonical two-sequence single-item database.
  fs::path write_reference_db() const {
    return write("db.txt",
                 "1 -1 2 -1 3 -1 4 -1 5 -1 6 -1 -2\n"
                 "1 -1 2 -1 4 -1 5 -1 7 -1 6 -1 -2\n");
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, CompressWritesReportCodesetAndArchive) {
  fs::path db = write_reference_db();
  RunResult r = run("compress --input " + db.string() +
                    " --mode ful --minsup 1.0 --minconf 1.0" +
                    " --report " + path("report.json").string() +
                    " --codeset " + path("code.json").string() +
                    " --archive " + path("archive.json").string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("compression_ratio=1.0000"), std::string::npos) << r.out;

  comsr::json report = comsr::json::parse(slurp(path("report.json")));
  EXPECT_EQ(report.at("mode"), "ful");
  EXPECT_DOUBLE_EQ(report.at("compression_ratio").get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(report.at("minsup").get<double>(), 1.0);
  EXPECT_EQ(report.at("db_sequences").get<int>(), 2);
  EXPECT_EQ(report.at("db_total_items").get<int>(), 12);
  EXPECT_EQ(report.at("cover"), "repeat");
  EXPECT_EQ(report.at("partial_cost"), "two");
  EXPECT_EQ(report.at("accepted").get<std::uint64_t>() +
                report.at("rejected").get<std::uint64_t>(),
            report.at("candidate_count").get<std::uint64_t>());
  EXPECT_EQ(report.at("final_rule_count").get<std::size_t>(),
            report.at("rules").size());
  EXPECT_TRUE(report.at("initial").contains("total"));
  EXPECT_TRUE(report.at("final").contains("total"));
  EXPECT_TRUE(report.contains("loop_seconds"));
  EXPECT_TRUE(report.at("rules")[0].contains("full_uses"));
  EXPECT_TRUE(report.at("rules")[0].contains("line"));

  EXPECT_TRUE(fs::exists(path("code.json")));
  EXPECT_TRUE(fs::exists(path("archive.json")));
}

TEST_F(CliTest, ArchiveDecodesBackToTheInput) {
  fs::path db = write_reference_db();
  RunResult r = run("compress --input " + db.string() +
                    " --mode ful --minsup 0.5 --minconf 0.5" +
                    " --codeset " + path("code.json").string() +
                    " --archive " + path("archive.json").string());
  ASSERT_EQ(r.code, 0) << r.err;

  RunResult d = run("decode --archive " + path("archive.json").string() +
                    " --codeset " + path("code.json").string() +
                    " --output " + path("restored.txt").string());
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(slurp(path("restored.txt")), slurp(db));
  EXPECT_NE(d.out.find("decoded 2 sequences, 12 items"), std::string::npos) << d.out;
}

TEST_F(CliTest, NonSingleItemInputExitsOne) {
  fs::path db = write("multi.txt", "1 7 -1 3 -1 -2\n");
  RunResult r = run("compress --input " + db.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("sequence 1 position 1"), std::string::npos) << r.err;
}

TEST_F(CliTest, MalformedInputExitsOneWithLineNumber) {
  fs::path db = write("bad.txt", "1 -1 -2\n1 x -1 -2\n");
  RunResult r = run("compress --input " + db.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST_F(CliTest, MissingInputFileExitsThree) {
  RunResult r = run("compress --input " + path("absent.txt").string());
  EXPECT_EQ(r.code, 3);
}

TEST_F(CliTest, InvalidFlagsExitOne) {
  fs::path db = write_reference_db();
  EXPECT_EQ(run("compress --input " + db.string() + " --mode bogus").code, 1);
  EXPECT_EQ(run("compress --input " + db.string() + " --minsup 0").code, 1);
  EXPECT_EQ(run("compress --input " + db.string() + " --minsup 1.5").code, 1);
  EXPECT_EQ(run("compress --input " + db.string() + " --minconf 0").code, 1);
  EXPECT_EQ(run("compress --input " + db.string() + " --max-ante 0").code, 1);
  EXPECT_EQ(run("compress").code, 1);  // --input is required
  EXPECT_EQ(run("unknown-subcommand").code, 1);
}

TEST_F(CliTest, TamperedArchiveExitsTwo) {
  fs::path db = write_reference_db();
  ASSERT_EQ(run("compress --input " + db.string() +
                " --mode ful --minsup 0.5 --minconf 0.5" +
                " --codeset " + path("code.json").string() +
                " --archive " + path("archive.json").string())
                .code,
            0);

  comsr::json archive = comsr::json::parse(slurp(path("archive.json")));
  // Overlap: make one full token claim the same position twice.
  bool tampered = false;
  for (auto& seq : archive["sequences"]) {
    for (auto& token : seq["tokens"]) {
      if (token["kind"] == "full") {
        token["positions"][1] = token["positions"][0];
        tampered = true;
        break;
      }
    }
    if (tampered) break;
  }
  ASSERT_TRUE(tampered);
  write("tampered.json", archive.dump());
  RunResult r = run("decode --archive " + path("tampered.json").string() +
                    " --codeset " + path("code.json").string() +
                    " --output " + path("out.txt").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("consistency error"), std::string::npos) << r.err;

  // Usage table inconsistent with the tokens.
  archive = comsr::json::parse(slurp(path("archive.json")));
  archive["usage"][0]["full"] = archive["usage"][0]["full"].get<int>() + 1;
  write("tampered2.json", archive.dump());
  r = run("decode --archive " + path("tampered2.json").string() +
          " --codeset " + path("code.json").string() +
          " --output " + path("out.txt").string());
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, CorruptJsonArchiveExitsOne) {
  fs::path db = write_reference_db();
  ASSERT_EQ(run("compress --input " + db.string() +
                " --codeset " + path("code.json").string() +
                " --archive " + path("archive.json").string())
                .code,
            0);
  write("broken.json", "{ not json");
  RunResult r = run("decode --archive " + path("broken.json").string() +
                    " --codeset " + path("code.json").string() +
                    " --output " + path("out.txt").string());
  EXPECT_EQ(r.code, 1);
}

TEST_F(CliTest, GridDegenerateRangeEmitsSingleRow) {
  fs::path db = write_reference_db();
  RunResult r = run("grid --input " + db.string() +
                    " --mode non --minsup 0.5 --minconf 0.5" +
                    " --vary minconf --from 0.5 --to 0.5 --step 0.1 --csv " +
                    path("grid.csv").string());
  ASSERT_EQ(r.code, 0) << r.err;
  std::string csv = slurp(path("grid.csv"));
  std::istringstream lines(csv);
  std::string header, row, extra;
  ASSERT_TRUE(static_cast<bool>(std::getline(lines, header)));
  EXPECT_EQ(header,
            "minsup,minconf,mode,final_rule_count,compression_ratio,total_length,"
            "loop_seconds");
  ASSERT_TRUE(static_cast<bool>(std::getline(lines, row)));
  EXPECT_EQ(row.rfind("0.5000,0.5000,non,", 0), 0u) << row;
  EXPECT_FALSE(static_cast<bool>(std::getline(lines, extra))) << extra;
}

TEST_F(CliTest, GridSweepsTheVariedAxis) {
  fs::path db = write_reference_db();
  RunResult r = run("grid --input " + db.string() +
                    " --mode ful --minsup 0.5 --minconf 0.5" +
                    " --vary minconf --from 0.2 --to 0.6 --step 0.2 --csv " +
                    path("grid.csv").string());
  ASSERT_EQ(r.code, 0) << r.err;
  std::string csv = slurp(path("grid.csv"));
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 3u) << csv;
  EXPECT_EQ(rows[0].rfind("0.5000,0.2000,ful,", 0), 0u) << rows[0];
  EXPECT_EQ(rows[1].rfind("0.5000,0.4000,ful,", 0), 0u) << rows[1];
  EXPECT_EQ(rows[2].rfind("0.5000,0.6000,ful,", 0), 0u) << rows[2];
  for (const std::string& row : rows) {
    std::size_t commas = 0;
    for (char c : row) commas += (c == ',');
    EXPECT_EQ(commas, 6u) << row;
  }
}

TEST_F(CliTest, GridNonTimingColumnsAreReproducible) {
  fs::path db = write_reference_db();
  auto sweep = [&](const std::string& name) {
    EXPECT_EQ(run("grid --input " + db.string() +
                  " --mode non --minsup 0.5 --minconf 0.5" +
                  " --vary minsup --from 0.5 --to 1.0 --step 0.25 --csv " +
                  path(name).string())
                  .code,
              0);
    std::string csv = slurp(path(name));
    // Strip the trailing loop_seconds column from every row.
    std::istringstream lines(csv);
    std::string line, stripped;
    while (std::getline(lines, line)) {
      std::size_t cut = line.rfind(',');
      stripped += line.substr(0, cut) + "\n";
    }
    return stripped;
  };
  EXPECT_EQ(sweep("a.csv"), sweep("b.csv"));
}

TEST_F(CliTest, GridRejectsBadRanges) {
  fs::path db = write_reference_db();
  const std::string base = "grid --input " + db.string() +
                           " --mode non --csv " + path("grid.csv").string() +
                           " --vary minsup ";
  EXPECT_EQ(run(base + "--from 0.7 --to 0.3 --step 0.1").code, 1);
  EXPECT_EQ(run(base + "--from 0.0 --to 0.5 --step 0.1").code, 1);
  EXPECT_EQ(run(base + "--from 0.3 --to 0.5 --step 0").code, 1);
  EXPECT_EQ(run(base + "--from 0.3 --to 1.5 --step 0.1").code, 1);
}

TEST_F(CliTest, StatsSummarizesTheDatabase) {
  fs::path db = write_reference_db();
  RunResult r = run("stats --input " + db.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("sequences=2 alphabet=7 total_items=12"), std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("mean_length=6.000"), std::string::npos);
  EXPECT_NE(r.out.find("single_item=yes"), std::string::npos);

  fs::path multi = write("multi.txt", "1 -1 2 -1 -2\n3 -1 4 5 -1 -2\n");
  r = run("stats --input " + multi.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("single_item=no (sequence 2 position 2)"), std::string::npos)
      << r.out;
}

TEST_F(CliTest, StatsHonorsTheLimitFlag) {
  std::string text;
  for (int i = 1; i <= 5; ++i) text += std::to_string(i) + " -1 -2\n";
  fs::path db = write("five.txt", text);
  RunResult r = run("stats --input " + db.string() + " --limit 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sequences=3"), std::string::npos) << r.out;
}

TEST_F(CliTest, CoverAndPartialCostFlagsReachTheReport) {
  fs::path db = write_reference_db();
  RunResult r = run("compress --input " + db.string() +
                    " --mode non --minsup 0.5 --minconf 0.5" +
                    " --cover single --partial-cost uniform --report " +
                    path("report.json").string());
  ASSERT_EQ(r.code, 0) << r.err;
  comsr::json report = comsr::json::parse(slurp(path("report.json")));
  EXPECT_EQ(report.at("cover"), "single");
  EXPECT_EQ(report.at("partial_cost"), "uniform");
}

TEST_F(CliTest, OracleSubcommandListsRulesButStaysHidden) {
  fs::path db = write_reference_db();
  RunResult r = run("oracle --input " + db.string() +
                    " --minsup 1.0 --minconf 1.0 --max-ante 1 --max-cons 1");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1 -> 2 sup=1.0000 conf=1.0000"), std::string::npos) << r.out;

  RunResult help = run("--help");
  EXPECT_NE(help.out.find("compress"), std::string::npos);
  EXPECT_NE(help.out.find("grid"), std::string::npos);
  EXPECT_NE(help.out.find("decode"), std::string::npos);
  EXPECT_NE(help.out.find("stats"), std::string::npos);
  EXPECT_EQ(help.out.find("oracle"), std::string::npos) << help.out;
}

TEST_F(CliTest, ThreadEnvironmentVariableIsAccepted) {
  fs::path db = write_reference_db();
  RunResult r = run("compress --input " + db.string() + " --mode ful");
  ASSERT_EQ(r.code, 0);
  fs::path out = path("stdout.log");
  std::string cmd = "COMSR_THREADS=1 \"" + cli_binary() + "\" compress --input " +
                    db.string() + " --mode ful > \"" + out.string() + "\" 2>/dev/null";
  ASSERT_EQ(WEXITSTATUS(std::system(cmd.c_str())), 0);
  std::string capped = slurp(out);
  // The encoding must not depend on the thread cap; compare the final totals.
  std::size_t at = r.out.find("final:");
  ASSERT_NE(at, std::string::npos);
  EXPECT_NE(capped.find(r.out.substr(at, r.out.find('\n', at) - at)),
            std::string::npos)
      << capped;
}
