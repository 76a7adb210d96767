#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hamflow/cli/config.hpp"

namespace hamflow::cli {

enum ExitCode : int { exit_ok = 0, exit_verify_failed = 1, exit_config_error = 2, exit_blow_up = 3 };

struct CheckResult {
  std::string check;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// pass iff value ≤ tolerance; NaN never passes.
CheckResult make_check(std::string name, double value, double tolerance);

struct RateComparison {
  std::string flow;
  double lambda = 0.0;  // +inf when the system λ is infinite
  double energy = 0.0;
  double derived_factor = 0.0;
  double printed_factor = 0.0;
  double derived_distance = 0.0;
  double printed_distance = 0.0;
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  std::vector<RateComparison> rates;
};

// Runs one named verification suite against the configuration.
SuiteReport run_suite(const std::string& suite, const RunConfig& cfg);

struct CommandResult {
  int exit_code = exit_ok;
  std::vector<std::filesystem::path> files;
  std::vector<CheckResult> checks;
};

CommandResult cmd_eval(const RunConfig& cfg, const std::filesystem::path& out_dir);
CommandResult cmd_integrate(const RunConfig& cfg, const std::filesystem::path& out_dir);
CommandResult cmd_verify(const RunConfig& cfg, const std::filesystem::path& out_dir);
CommandResult cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir);
CommandResult run_task(const RunConfig& cfg, const std::filesystem::path& out_dir);

// Full command-line entry point; returns the process exit code.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hamflow::cli
