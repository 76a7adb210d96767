#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "hamflow/cli/output.hpp"

namespace hamflow::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hamflow_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Writes `config` and runs the tool; returns its exit status.
  int run(const std::string& task, const std::string& config, const std::string& extra = "") {
    write_text(dir_ / "config.json", config);
    const std::string cmd = std::string(HAMFLOW_EXE) + " " + task + " --config " + (dir_ / "config.json").string() +
                            " --out " + (dir_ / "out").string() + " " + extra + " > " +
                            (dir_ / "stdout.txt").string() + " 2> " + (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string stderr_text() const { return read_text(dir_ / "stderr.txt"); }
  fs::path out(const std::string& name) const { return dir_ / "out" / name; }

  fs::path dir_;
};

const char* kIntegrate = R"({
  "system": {"potential": {"family": "harmonic", "coefficients": [1.0]}, "m": 1.0, "lambda": 2.0},
  "integrate": {"method": "rk4", "dt": 0.001, "t_end": 6.283185307179586, "start": {"x": 1.0, "p": 0.0},
                "flows": ["standard", "j=2", "multiplicative"]}
})";

TEST_F(CliTest, IntegrateWritesOneFilePerFlow) {
  ASSERT_EQ(run("integrate", kIntegrate), 0) << stderr_text();
  double energy = NAN;
  for (const char* label : {"standard", "j2", "multiplicative"}) {
    const auto data = read_csv(out(std::string("trajectory_") + label + ".csv"));
    ASSERT_EQ(data.rows.size(), 6284u) << label;
    EXPECT_EQ(data.header, (std::vector<std::string>{"t", "x", "p", "H_N", "H_lambda"}));
    const double e0 = parse_real(data.rows.front()[data.column("H_N")]);
    if (std::isnan(energy)) energy = e0;
    EXPECT_EQ(e0, energy) << label;
    EXPECT_EQ(parse_real(data.rows.front()[data.column("t")]), 0.0);
  }
  const auto standard = read_csv(out("trajectory_standard.csv"));
  EXPECT_NEAR(parse_real(standard.rows.back()[1]), 1.0, 1e-6);
  EXPECT_NEAR(parse_real(standard.rows.back()[2]), 0.0, 1e-6);
}

TEST_F(CliTest, OutputIsDeterministic) {
  ASSERT_EQ(run("integrate", kIntegrate), 0);
  const auto first = read_text(out("trajectory_multiplicative.csv"));
  ASSERT_EQ(run("integrate", kIntegrate), 0);
  EXPECT_EQ(read_text(out("trajectory_multiplicative.csv")), first);
}

TEST_F(CliTest, EvalWritesTermsAndClosedForms) {
  ASSERT_EQ(run("eval", R"({"system": {"potential": {"family": "harmonic"}, "lambda": 2.0}, "eval": {"J": 3, "states": [{"x": 1, "p": 0}]}})"), 0)
      << stderr_text();
  const auto terms = read_csv(out("eval_terms.csv"));
  ASSERT_EQ(terms.rows.size(), 3u);
  EXPECT_EQ(parse_real(terms.rows[0][terms.column("H_j")]), 0.5);
  const auto closed = read_csv(out("eval_closed.csv"));
  ASSERT_EQ(closed.rows.size(), 1u);
  EXPECT_NEAR(parse_real(closed.rows[0][closed.column("H_lambda")]), -4.0 * std::exp(-0.125), 1e-14);
}

TEST_F(CliTest, JsonFormat) {
  ASSERT_EQ(run("eval", R"({"system": {"potential": {"family": "harmonic"}, "lambda": 2.0}, "output": {"format": "json"}})"), 0) << stderr_text();
  const auto text = read_text(out("eval.json"));
  EXPECT_NE(text.find("\"H_lambda\""), std::string::npos);
  EXPECT_FALSE(fs::exists(out("eval_terms.csv")));
}

TEST_F(CliTest, SweepRowsFollowLambdas) {
  ASSERT_EQ(run("sweep", R"({"system": {"potential": {"family": "harmonic"}}, "sweep": {"lambdas": [1, 4, 16]}})"), 0) << stderr_text();
  const auto data = read_csv(out("sweep.csv"));
  ASSERT_EQ(data.rows.size(), 3u);
  const auto col = data.column("H_residual");
  EXPECT_GT(parse_real(data.rows[0][col]), parse_real(data.rows[1][col]));
  EXPECT_GT(parse_real(data.rows[1][col]), parse_real(data.rows[2][col]));
}

TEST_F(CliTest, VerifyPassesAndReports) {
  ASSERT_EQ(run("verify", R"({"system": {"potential": {"family": "harmonic"}, "lambda": 2.0}, "verify": {"suites": ["legendre", "rescaling"], "samples": 20}})"),
            0)
      << stderr_text();
  const auto report = read_csv(out("verify_report.csv"));
  EXPECT_EQ(report.header, (std::vector<std::string>{"check", "value", "tolerance", "pass"}));
  for (const auto& row : report.rows) EXPECT_EQ(row[3], "true") << row[0];
  EXPECT_TRUE(fs::exists(out("rate_factor_comparison.csv")));
}

TEST_F(CliTest, SeededVerifyIsReproducible) {
  const char* cfg = R"({"system": {"potential": {"family": "harmonic"}}, "verify": {"suites": ["legendre"], "samples": 10}})";
  ASSERT_EQ(run("verify", cfg, "--seed 3"), 0);
  const auto a = read_text(out("verify_report.csv"));
  ASSERT_EQ(run("verify", cfg, "--seed 3"), 0);
  EXPECT_EQ(read_text(out("verify_report.csv")), a);
}

TEST_F(CliTest, PrintedRateFactorFailsVerification) {
  EXPECT_EQ(run("verify", R"({"system": {"potential": {"family": "harmonic"}, "lambda": 2.0},
      "verify": {"suites": ["rescaling"], "printed_rate_factor": true}})"),
            1);
  const auto report = read_csv(out("verify_report.csv"));
  bool any_failed = false;
  for (const auto& row : report.rows) any_failed |= row[3] == "false";
  EXPECT_TRUE(any_failed);
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
  EXPECT_EQ(run("verify", R"({"system": {"potential": {"family": "harmonic"}}, "verify": {"suites": []}})"), 2);
  EXPECT_NE(stderr_text().find("verify.suites"), std::string::npos);
  EXPECT_EQ(run("eval", R"({"system": {"potential": {"family": "cubic"}}})"), 2);
  EXPECT_NE(stderr_text().find("system.potential.family"), std::string::npos);
  EXPECT_EQ(run("eval", "{ \"system\": "), 2);
  EXPECT_EQ(run("plot", R"({"system": {"potential": {"family": "harmonic"}}})"), 2);
  EXPECT_EQ(run("eval", R"({"system": {"potential": {"family": "harmonic"}}})", "--seed -4"), 2);
}

TEST_F(CliTest, BlowUpExitsThree) {
  EXPECT_EQ(run("integrate", R"({
    "system": {"potential": {"family": "polynomial", "coefficients": [0, 0, 0, 0, 0, 0, 1]}},
    "integrate": {"dt": 0.5, "t_end": 20, "start": {"x": 3, "p": 0}}})"),
            3);
  EXPECT_NE(stderr_text().find("blow-up"), std::string::npos);
}

TEST_F(CliTest, HelpExitsZero) {
  const std::string cmd = std::string(HAMFLOW_EXE) + " --help > /dev/null";
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 0);
}

}  // namespace
}  // namespace hamflow::cli
