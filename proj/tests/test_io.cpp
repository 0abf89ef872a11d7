#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "rbfhs/cli.hpp"
#include "support.hpp"

namespace rbfhs::test {
namespace {

TEST(Loader, SevenComponentsFixture) {
  LoadedDpi loaded = load_dpi_file(fixture("seven_components.dpi"));
  EXPECT_EQ(loaded.dpi.backend(), Backend::abstract);
  EXPECT_EQ(loaded.dpi.size(), 7u);
  EXPECT_EQ(loaded.dpi.conflict_family(), seven_components().conflict_family());
  ASSERT_TRUE(loaded.pr);
  EXPECT_EQ(loaded.pr->values, seven_components_pr().values);
  EXPECT_TRUE(loaded.pr->cost_adjusted);
  EXPECT_EQ(probabilities_for(loaded, PrMode::prob).values, seven_components_pr().values);
}

TEST(Loader, PlainProbabilitiesAreScaled) {
  LoadedDpi loaded = load_dpi_file(fixture("five_axioms.dpi"));
  FaultProbabilities pr = probabilities_for(loaded, PrMode::prob);
  EXPECT_TRUE(pr.cost_adjusted);
  EXPECT_DOUBLE_EQ(pr.values[4], 0.15 * 0.25);
  EXPECT_EQ(probabilities_for(loaded, PrMode::card).values, std::vector<double>(5, 1.0 / 3));
}

int error_line(const std::string& text) {
  try {
    parse_dpi(text);
  } catch (const LoadError& e) {
    return e.line();
  }
  return -1;
}

TEST(Loader, Errors) {
  EXPECT_EQ(error_line("[K]\nax1: A\n[PR]\nax1: 1.2\n"), 4);
  EXPECT_EQ(error_line("[K]\nax1: A\nax1: B\n"), 3);
  EXPECT_EQ(error_line("[K]\nax1: A &\n"), 2);
  EXPECT_EQ(error_line("ax1: A\n"), 1);
  EXPECT_EQ(error_line("[Q]\n"), 1);
  EXPECT_EQ(error_line("[K]\nax1 A\n"), 2);
  EXPECT_EQ(error_line("[COMPONENTS]\n3\n[CONFLICTS]\n1 4\n"), 4);
  EXPECT_EQ(error_line("[COMPONENTS]\n3\n[K]\nax1: A\n"), 3);
  EXPECT_EQ(error_line("[K]\nax1: A\n[PR]\nax2: 0.1\n"), 4);
  EXPECT_EQ(error_line("[K]\nax1: A\nax2: B\n[PR]\nax1: 0.1\n"), 0);
  EXPECT_EQ(error_line("[COMPONENTS]\n3\n[PR ADJUSTED]\n1: 0.6\n"), 4);
  EXPECT_THROW(parse_dpi("[COMPONENTS]\n3\n[CONFLICTS]\n1 2\n1 2 3\n"), LoadError);
  EXPECT_THROW(load_dpi_file(fixture("invalid/not_antichain.dpi")), LoadError);
  EXPECT_THROW(load_dpi_file(fixture("invalid/bad_pr.dpi")), LoadError);
  EXPECT_THROW(load_dpi_file(fixture("missing.dpi")), Error);
}

TEST(Loader, ParseErrorColumnPointsIntoTheLine) {
  try {
    parse_dpi("[K]\n  ax1: A & $\n");
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find(":2: 12: unknown token"), std::string::npos) << e.what();
  }
}

TEST(Loader, CommentsAndBlankLines) {
  LoadedDpi loaded = parse_dpi("# header\n\n[K]  \nax1: A  # trailing\n[B]\nA -> B\n[P]\nB\n");
  EXPECT_EQ(loaded.dpi.size(), 1u);
  EXPECT_EQ(loaded.dpi.background().size(), 1u);
  EXPECT_EQ(loaded.dpi.positive().size(), 1u);
  EXPECT_FALSE(loaded.pr);
}

TEST(Loader, FormatRoundTrip) {
  for (const char* name : {"five_axioms.dpi", "seven_components.dpi"}) {
    LoadedDpi a = load_dpi_file(fixture(name));
    LoadedDpi b = parse_dpi(format_dpi(a.dpi, a.pr));
    EXPECT_EQ(b.dpi.ids(), a.dpi.ids());
    EXPECT_EQ(b.dpi.sentences(), a.dpi.sentences());
    EXPECT_EQ(b.dpi.negative(), a.dpi.negative());
    EXPECT_EQ(b.dpi.conflict_family(), a.dpi.conflict_family());
    EXPECT_EQ(b.pr->values, a.pr->values);
    EXPECT_EQ(b.pr->cost_adjusted, a.pr->cost_adjusted);
  }
}

TEST(Csv, RoundTrip) {
  std::vector<BenchRow> rows{
      {"seven_components", "rbfhs", 2, 0, 0.1 + 0.2, 9, 40, 20, 8, 7, 2},
      {"gen_001", "hstree", 20, 4, 1234.5678901234, 123456789012ull, 1, 2, 3, 4, 20},
  };
  EXPECT_EQ(parse_bench_csv(format_bench_csv(rows)), rows);
  EXPECT_EQ(format_bench_csv({}), std::string(kBenchHeader) + "\n");
  EXPECT_THROW(parse_bench_csv(std::string("dpi,algo\n")), Error);
  EXPECT_THROW(parse_bench_csv(std::string(kBenchHeader) + "\nseven_components,rbfhs,2\n"), Error);
  std::ostringstream out;
  EXPECT_THROW(write_bench_row(out, BenchRow{"a,b", "rbfhs"}), Error);
}

TEST(Bench, FactorsArePureFunctionsOfRows) {
  std::vector<BenchRow> rows{
      {"x", "rbfhs", 2, 0, 2.0, 10, 0, 0, 0, 0, 2}, {"x", "rbfhs", 2, 1, 1.0, 5, 0, 0, 0, 0, 2},
      {"x", "hstree", 2, 0, 1.0, 40, 0, 0, 0, 0, 2}, {"x", "hstree", 2, 1, 2.0, 10, 0, 0, 0, 0, 2},
  };
  auto f = compute_factors(rows);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_DOUBLE_EQ(f[0].memory_factor, (4.0 + 2.0) / 2);
  EXPECT_DOUBLE_EQ(f[0].time_factor, (2.0 + 0.5) / 2);
  EXPECT_EQ(format_factors_csv(f), "dpi,ld,memory_factor,time_factor\nx,2,3,1.25\n");
}

TEST(Bench, CountersAreDeterministic) {
  std::vector<NamedDpi> instances{{"seven_components", load_dpi_file(fixture("seven_components.dpi"))},
                                  {"five_axioms", load_dpi_file(fixture("five_axioms.dpi"))}};
  BenchConfig config;
  config.sessions = 3;
  config.seed = 9;
  config.lds = {2, 6};
  BenchReport a = run_bench(instances, config);
  BenchReport b = run_bench(instances, config);
  EXPECT_TRUE(a.failures.empty());
  ASSERT_EQ(a.rows.size(), 2u * 2u * 2u * 3u);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    BenchRow x = a.rows[i], y = b.rows[i];
    EXPECT_LE(x.diagnoses_found, x.ld);
    x.runtime_ms = y.runtime_ms = 0.0;
    EXPECT_EQ(x, y);
  }
  for (const auto& f : compute_factors(a.rows)) EXPECT_GT(f.memory_factor, 0.0);
}

TEST(Bench, RecordsFailuresAndContinues) {
  std::vector<NamedDpi> instances{{"nopr", parse_dpi("[COMPONENTS]\n3\n[CONFLICTS]\n1 2\n")},
                                  {"seven_components", load_dpi_file(fixture("seven_components.dpi"))}};
  BenchConfig config;
  config.mode = PrMode::prob;
  config.sessions = 1;
  config.lds = {2};
  BenchReport r = run_bench(instances, config);
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].dpi, "nopr");
  EXPECT_EQ(r.rows.size(), 2u);
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("rbfhs_test_" + std::to_string(::getpid()))) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Commands, DiagPrintsDiagnosesAndStats) {
  TempDir tmp;
  cli::DiagOptions o;
  o.dpi = fixture("seven_components.dpi");
  o.mode = "prob";
  o.ld = 4;
  o.trace = tmp / "trace.txt";
  o.csv = tmp / "row.csv";
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_diag(o, out, err), 0) << err.str();
  EXPECT_NE(out.str().find("1 {1,4} pr=0.0278597 normalized=0.3333"), std::string::npos) << out.str();
  EXPECT_NE(out.str().find("4 {2,4,6}"), std::string::npos);
  auto rows = parse_bench_csv(slurp(o.csv));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].diagnoses_found, 4u);
  EXPECT_NE(slurp(o.trace).find("BACKTRACK"), std::string::npos);
}

TEST(Commands, DiagFailures) {
  std::ostringstream out, err;
  cli::DiagOptions o;
  o.dpi = fixture("five_axioms.dpi");
  o.ld = 0;
  EXPECT_NE(cli::cmd_diag(o, out, err), 0);
  o.ld = 2;
  o.algo = "bfs";
  EXPECT_NE(cli::cmd_diag(o, out, err), 0);
  o.algo = "rbfhs";
  o.dpi = fixture("invalid/not_antichain.dpi");
  EXPECT_NE(cli::cmd_diag(o, out, err), 0);
  EXPECT_NE(err.str().find("antichain"), std::string::npos);
}

TEST(Commands, SequentialSimulatedAndInteractiveAgree) {
  TempDir tmp;
  cli::SequentialOptions o;
  o.dpi = fixture("five_axioms.dpi");
  o.ld = 4;
  o.actual = "ax1,ax4";
  o.trace = tmp / "sim.jsonl";
  std::istringstream no_input;
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_sequential(o, no_input, out, err), 0) << err.str();
  EXPECT_NE(out.str().find("final={ax1,ax4}"), std::string::npos);

  cli::SequentialOptions h = o;
  h.actual.clear();
  h.oracle = "interactive";
  h.trace = tmp / "human.jsonl";
  std::istringstream answers("maybe\nn\ny\n");
  std::ostringstream prompts;
  ASSERT_EQ(cli::cmd_sequential(h, answers, prompts, err), 0) << err.str();
  EXPECT_NE(prompts.str().find("ax1 correct? A -> !B"), std::string::npos) << prompts.str();
  EXPECT_EQ(slurp(o.trace), slurp(h.trace));
}

TEST(Commands, SequentialSeededSessionsAreReproducible) {
  TempDir tmp;
  cli::SequentialOptions o;
  o.dpi = fixture("seven_components.dpi");
  o.mode = "prob";
  o.ld = 3;
  o.sessions = 5;
  o.seed = 7;
  std::istringstream in;
  std::ostringstream out, err;
  o.trace = tmp / "a.jsonl";
  o.csv = tmp / "a.csv";
  ASSERT_EQ(cli::cmd_sequential(o, in, out, err), 0) << err.str();
  o.trace = tmp / "b.jsonl";
  ASSERT_EQ(cli::cmd_sequential(o, in, out, err), 0) << err.str();
  EXPECT_EQ(slurp(tmp / "a.jsonl"), slurp(tmp / "b.jsonl"));
  EXPECT_EQ(parse_bench_csv(slurp(tmp / "a.csv")).size(), 5u);
}

TEST(Commands, SequentialRejectsNonMinimalActual) {
  cli::SequentialOptions o;
  o.dpi = fixture("five_axioms.dpi");
  o.actual = "ax1,ax3,ax5";
  std::istringstream in;
  std::ostringstream out, err;
  EXPECT_NE(cli::cmd_sequential(o, in, out, err), 0);
}

TEST(Commands, BenchOnEmptyDirectoryWritesHeaderOnly) {
  TempDir tmp;
  std::filesystem::create_directories(tmp / "empty");
  cli::BenchOptions o;
  o.dir = tmp / "empty";
  o.out = tmp / "out.csv";
  o.plot = tmp / "plot.csv";
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_bench(o, out, err), 0) << err.str();
  EXPECT_EQ(slurp(o.out), std::string(kBenchHeader) + "\n");
  EXPECT_EQ(slurp(o.plot), "dpi,ld,memory_factor,time_factor\n");
}

TEST(Commands, CheckPassesOnFixtures) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_check({fixture("five_axioms.dpi"), "card"}, out, err), 0) << out.str() << err.str();
  EXPECT_EQ(cli::cmd_check({fixture("seven_components.dpi"), "prob"}, out, err), 0) << out.str() << err.str();
  EXPECT_EQ(out.str().find("FAIL"), std::string::npos);
}

TEST(Commands, GenWritesLoadableInstances) {
  TempDir tmp;
  cli::GenOptions o;
  o.out = tmp / "gen";
  o.count = 3;
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_gen(o, out, err), 0) << err.str();
  auto files = list_dpi_files(o.out);
  ASSERT_EQ(files.size(), 3u);
  LoadedDpi loaded = load_dpi_file(files[0].string());
  EXPECT_EQ(loaded.dpi.conflict_family(), gen_random_dpi(12, 6, 3, 1).conflict_family());
}

}  // namespace
}  // namespace rbfhs::test
