#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hamflow/canonical.hpp"
#include "hamflow/dynamics.hpp"
#include "hamflow/errors.hpp"
#include "hamflow/potential.hpp"
#include "hamflow/state.hpp"
#include "hamflow/system.hpp"

namespace hamflow::cli {

enum class Task { eval, integrate, verify, sweep };
enum class OutputFormat { csv, json };

std::string_view to_string(Task task);
Task parse_task(std::string_view name);

// Raised for anything wrong with the configuration file. `field` is a dotted
// path such as "system.potential.family"; `line` is 0 when unknown.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, std::string message, int line = 0, int column = 0);
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string field_;
  int line_;
  int column_;
};

struct SystemConfig {
  Potential potential = Potential::harmonic(1.0);
  SystemParams params{1.0, Lambda::infinite()};
};

struct EvalConfig {
  int order = 4;
  std::vector<PhaseState> states{{1.0, 0.0}};
};

struct IntegrateConfig {
  dynamics::IntegratorConfig integrator{dynamics::Method::rk4, 1e-3, 6.283185307179586};
  PhaseState start{1.0, 0.0};
  std::vector<dynamics::FlowSpec> flows{dynamics::FlowSpec::standard()};
};

struct CanonicalConfig {
  std::string generator = "exchange";
  double alpha = 1.0;
  canonical::DomainBox box{{-2.0, 2.0}, {-2.0, 2.0}};
  double lambda = 4.0;
};

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names{
      "legendre",  "hamilton", "series", "reduction",   "coincidence",
      "rescaling", "energy",   "expand", "resummation", "canonical"};
  return names;
}

struct VerifyConfig {
  std::vector<std::string> suites = all_suites();
  int samples = 200;
  std::uint64_t seed = 1;
  bool printed_rate_factor = false;
  PhaseState start{1.0, 0.0};
  dynamics::IntegratorConfig integrator{dynamics::Method::rk4, 1e-3, 6.283185307179586};
  double rescaling_t_end = 1.0;
  std::vector<double> flow_lambdas{1.0, 2.0, 10.0};
  std::vector<int> rate_orders{2, 3};
  CanonicalConfig canonical;
};

struct SweepConfig {
  std::vector<double> lambdas;
  PhaseState state{1.0, 0.0};
  std::vector<int> rate_orders{1, 2, 3};
};

struct OutputConfig {
  std::filesystem::path path = ".";
  OutputFormat format = OutputFormat::csv;
};

struct RunConfig {
  Task task = Task::eval;
  SystemConfig system;
  EvalConfig eval;
  IntegrateConfig integrate;
  VerifyConfig verify;
  SweepConfig sweep;
  OutputConfig output;
};

// Parses JSON text. `task` is the task requested on the command line; a
// "task" key in the file, if present, must agree with it.
RunConfig parse_config(std::string_view text, std::optional<Task> task = std::nullopt);
RunConfig load_config(const std::filesystem::path& path, std::optional<Task> task = std::nullopt);

}  // namespace hamflow::cli
