#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "adaptopt/problems.hpp"
#include "adaptopt/suite.hpp"
#include "adaptopt/trace_io.hpp"

namespace adaptopt {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

class SuiteTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("adaptopt_suite_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

json smoke_config() {
  return json::parse(R"({"runs": [
    {"id": "validate", "method": "validate",
     "problem": {"kind": "quadratic", "dim": 5, "seed": 1},
     "declared": {"delta": 0, "Delta": 0, "L": 10, "mu": 0}, "solver": {"samples": 500}},
    {"id": "gd", "method": "gd", "problem": {"kind": "quadratic", "dim": 5, "seed": 1},
     "solver": {"L0": 1.0, "N": 50}},
    {"id": "fgm", "method": "fgm", "problem": {"kind": "quadratic", "dim": 5, "seed": 1},
     "solver": {"L0": 1.0, "N": 50}}
  ]})");
}

TEST_F(SuiteTest, SmokeRunPasses) {
  const SuiteResult r = run_suite(smoke_config(), ".", dir_.string());
  ASSERT_EQ(r.runs.size(), 3u);
  EXPECT_EQ(exit_code(r), 0);
  for (const auto& run : r.runs) {
    EXPECT_TRUE(run.passed) << run.id << " " << run.error;
    EXPECT_TRUE(fs::exists(dir_ / (run.id + ".csv")));
    EXPECT_TRUE(fs::exists(dir_ / (run.id + ".json")));
    const CertifyResult c = certify_report((dir_ / (run.id + ".json")).string());
    EXPECT_TRUE(c.consistent);
    EXPECT_TRUE(c.passed);
  }
  EXPECT_TRUE(fs::exists(dir_ / "summary.json"));
}

TEST_F(SuiteTest, UnderdeclaredJumpFails) {
  const json cfg = json::parse(R"({"runs": [
    {"id": "abs", "method": "validate", "problem": {"kind": "abs", "dim": 1, "seed": 0},
     "declared": {"delta": 0, "Delta": 0, "L": 0.01, "mu": 0}, "solver": {"samples": 2000}}]})");
  const SuiteResult r = run_suite(cfg, ".", dir_.string());
  EXPECT_NE(exit_code(r), 0);
  EXPECT_FALSE(r.runs[0].report["checks"]["model_valid"].get<bool>());
}

TEST_F(SuiteTest, SolverErrorIsRecordedAsFailure) {
  const json cfg = json::parse(R"({"runs": [
    {"id": "bad", "method": "mirror-prox", "problem": {"kind": "quadratic", "dim": 2, "seed": 0}}]})");
  const SuiteResult r = run_suite(cfg, ".", dir_.string());
  EXPECT_NE(exit_code(r), 0);
  EXPECT_FALSE(r.runs[0].error.empty());
  EXPECT_TRUE(r.runs[0].report.contains("error"));
}

TEST_F(SuiteTest, RerunIsByteIdentical) {
  const fs::path a = dir_ / "a", b = dir_ / "b";
  run_suite(smoke_config(), ".", a.string(), 1);
  run_suite(smoke_config(), ".", b.string(), 2);
  for (const auto& e : fs::directory_iterator(a)) {
    EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << e.path().filename();
  }
}

TEST_F(SuiteTest, ProblemFromFile) {
  write_text_file((dir_ / "q.json").string(), dump_json(to_json(generate_problem("quadratic", 3, 2))));
  const json cfg = json::parse(R"({"runs": [
    {"id": "gd", "method": "gd", "problem": {"file": "q.json"}, "solver": {"N": 20}}]})");
  const SuiteResult r = run_suite(cfg, dir_.string(), (dir_ / "out").string());
  EXPECT_TRUE(r.passed());
}

TEST_F(SuiteTest, RejectsBadConfigs) {
  EXPECT_THROW(run_suite(json::object(), ".", dir_.string()), Error);
  const json dup = json::parse(R"({"runs": [{"id": "x", "method": "gd"}, {"id": "x", "method": "gd"}]})");
  EXPECT_THROW(run_suite(dup, ".", dir_.string()), Error);
  EXPECT_THROW(load_json_file((dir_ / "missing.json").string()), Error);
}

TEST_F(SuiteTest, CertifyDetectsTamperedReport) {
  run_suite(smoke_config(), ".", dir_.string());
  const fs::path path = dir_ / "gd.json";
  json report = load_json_file(path.string());
  report["checks"]["bound"] = false;
  write_text_file(path.string(), dump_json(report));
  EXPECT_FALSE(certify_report(path.string()).consistent);
}

TEST_F(SuiteTest, UnwritableOutputNamesPath) {
  const fs::path blocker = dir_ / "file";
  write_text_file(blocker.string(), "x");
  try {
    run_suite(smoke_config(), ".", (blocker / "sub").string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("sub"), std::string::npos);
  }
}

TEST_F(SuiteTest, EmptyTraceIsHeaderOnly) {
  const fs::path p = dir_ / "empty.csv";
  write_csv(switch_table(SwitchReport{}), p.string());
  EXPECT_EQ(slurp(p), "k,productive,h,f,g,dualnorm,running_stop_lhs,running_stop_rhs\n");
}

TEST_F(SuiteTest, CsvLineCountAndRoundTrip) {
  Table t{{"a", "b"}, {}};
  const std::vector<double> vals = {0.1, 1.0 / 3.0, -1e-310, 6.02214076e23, HUGE_VAL, -HUGE_VAL, 0.0, -0.0};
  for (std::size_t i = 0; i + 1 < vals.size(); i += 2) t.rows.push_back({vals[i], vals[i + 1]});
  const fs::path p = dir_ / "t.csv";
  write_csv(t, p.string());
  const std::string text = slurp(p);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), static_cast<long>(t.rows.size() + 1));
  const Table back = read_csv(p.string());
  EXPECT_EQ(back.columns, t.columns);
  ASSERT_EQ(back.rows.size(), t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_EQ(back.rows[i][j], t.rows[i][j]);
      EXPECT_EQ(std::signbit(back.rows[i][j]), std::signbit(t.rows[i][j]));
    }
  }
}

TEST(FormatDouble, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(HUGE_VAL), "inf");
  EXPECT_EQ(parse_double(format_double(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_THROW(parse_double("1.0x"), Error);
}

}  // namespace
}  // namespace adaptopt
