#include "hamflow/cli/commands.hpp"

#include <cmath>
#include <future>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hamflow/cli/output.hpp"
#include "hamflow/dynamics.hpp"
#include "hamflow/hierarchy.hpp"
#include "hamflow/mechanics.hpp"

namespace hamflow::cli {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

ojson json_real(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

double lambda_value(const SystemParams& params) {
  return params.lambda().is_infinite() ? std::numeric_limits<double>::infinity()
                                       : params.lambda().value();
}

ojson system_json(const RunConfig& cfg) {
  ojson coeffs = ojson::array();
  for (double c : cfg.system.potential.coefficients()) coeffs.push_back(c);
  return {{"potential",
           {{"family", std::string(to_string(cfg.system.potential.family()))},
            {"coefficients", coeffs}}},
          {"m", cfg.system.params.mass()},
          {"lambda", json_real(lambda_value(cfg.system.params))}};
}

std::string file_label(const dynamics::FlowSpec& spec) {
  std::string label = spec.label();
  std::erase(label, '=');
  return label;
}

fs::path emit(CommandResult& result, const fs::path& path, std::string_view content) {
  write_text(path, content);
  result.files.push_back(path);
  return path;
}

struct ClosedRow {
  double h_n, l_lambda, h_lambda, p_lambda, l_shifted, h_shifted;
  double l_series, h_series, p_series, l_trunc, h_trunc, p_trunc;
  bool ill_conditioned;
};

ClosedRow closed_row(const PhaseState& s, int order, const Potential& v, const SystemParams& params) {
  using namespace hierarchy;
  const KineticState ks = to_kinetic(s, params.mass());
  ClosedRow r{};
  r.h_n = additive_hamiltonian(s, v, params);
  r.l_shifted = shifted_lagrangian(ks, v, params);
  r.h_shifted = shifted_hamiltonian(s, v, params);
  r.p_lambda = lambda_momentum(ks, v, params);
  r.ill_conditioned = series_ill_conditioned(s, v, params);
  if (params.lambda().is_infinite()) {
    const double inf = std::numeric_limits<double>::infinity();
    r.l_lambda = r.l_series = inf;
    r.h_lambda = r.h_series = -inf;
    r.p_series = r.p_lambda;
    r.l_trunc = r.h_trunc = r.p_trunc = 0.0;
    return r;
  }
  const TruncationOrder j(order);
  r.l_lambda = multiplicative_lagrangian(ks, v, params);
  r.h_lambda = multiplicative_hamiltonian(s, v, params);
  r.l_series = truncated_series(j, SeriesKind::lagrangian, s, v, params);
  r.h_series = truncated_series(j, SeriesKind::hamiltonian, s, v, params);
  r.p_series = truncated_series(j, SeriesKind::momentum, s, v, params);
  r.l_trunc = std::abs(r.l_series - r.l_lambda);
  r.h_trunc = std::abs(r.h_series - r.h_lambda);
  r.p_trunc = std::abs(r.p_series - r.p_lambda);
  return r;
}

}  // namespace

CheckResult make_check(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, !std::isnan(value) && value <= tolerance};
}

CommandResult cmd_eval(const RunConfig& cfg, const fs::path& out_dir) {
  const auto& v = cfg.system.potential;
  const auto& params = cfg.system.params;
  const int order = cfg.eval.order;
  CommandResult result;

  CsvTable terms({"state", "x", "p", "j", "L_j", "H_j", "p_j", "p_j_printed"});
  CsvTable closed({"state", "x", "p", "H_N", "L_lambda", "H_lambda", "p_lambda", "L_shifted",
                   "H_shifted", "L_series", "H_series", "p_series", "L_truncation",
                   "H_truncation", "p_truncation", "ill_conditioned"});
  ojson states = ojson::array();

  for (std::size_t i = 0; i < cfg.eval.states.size(); ++i) {
    const PhaseState& s = cfg.eval.states[i];
    const double t = kinetic_energy(s, params);
    const double pot = v.eval(s.x);
    ojson rows = ojson::array();
    for (int j = 1; j <= order; ++j) {
      const double lj = hierarchy::lagrangian_j(j, t, pot);
      const double hj = hierarchy::hamiltonian_j(j, s, v, params);
      const double pj = hierarchy::momentum_j(j, s, v, params);
      const double pj_printed = hierarchy::momentum_j_printed(j, s, v, params);
      terms.row().add(i).add(s.x).add(s.p).add(j).add(lj).add(hj).add(pj).add(pj_printed);
      rows.push_back({{"j", j},
                      {"L_j", json_real(lj)},
                      {"H_j", json_real(hj)},
                      {"p_j", json_real(pj)},
                      {"p_j_printed", json_real(pj_printed)}});
    }
    const ClosedRow c = closed_row(s, order, v, params);
    closed.row().add(i).add(s.x).add(s.p).add(c.h_n).add(c.l_lambda).add(c.h_lambda);
    closed.add(c.p_lambda).add(c.l_shifted).add(c.h_shifted).add(c.l_series).add(c.h_series);
    closed.add(c.p_series).add(c.l_trunc).add(c.h_trunc).add(c.p_trunc).add(c.ill_conditioned);
    states.push_back({{"x", s.x},
                      {"p", s.p},
                      {"H_N", json_real(c.h_n)},
                      {"terms", rows},
                      {"closed",
                       {{"L_lambda", json_real(c.l_lambda)},
                        {"H_lambda", json_real(c.h_lambda)},
                        {"p_lambda", json_real(c.p_lambda)},
                        {"L_shifted", json_real(c.l_shifted)},
                        {"H_shifted", json_real(c.h_shifted)}}},
                      {"series",
                       {{"L", json_real(c.l_series)},
                        {"H", json_real(c.h_series)},
                        {"p", json_real(c.p_series)}}},
                      {"truncation",
                       {{"L", json_real(c.l_trunc)},
                        {"H", json_real(c.h_trunc)},
                        {"p", json_real(c.p_trunc)}}},
                      {"ill_conditioned", c.ill_conditioned}});
  }

  if (cfg.output.format == OutputFormat::csv) {
    emit(result, out_dir / "eval_terms.csv", terms.str());
    emit(result, out_dir / "eval_closed.csv", closed.str());
  } else {
    const ojson doc{{"task", "eval"}, {"system", system_json(cfg)}, {"J", order}, {"states", states}};
    emit(result, out_dir / "eval.json", doc.dump(2) + "\n");
  }
  return result;
}

CommandResult cmd_integrate(const RunConfig& cfg, const fs::path& out_dir) {
  const auto& v = cfg.system.potential;
  const auto& params = cfg.system.params;
  const auto& ic = cfg.integrate;
  ic.integrator.validate();

  std::vector<std::future<Trajectory>> jobs;
  for (const auto& spec : ic.flows) {
    const dynamics::FlowField field(spec, v, params);
    jobs.push_back(std::async(std::launch::async, [field, &ic] {
      return dynamics::integrate(field, ic.start, ic.integrator);
    }));
  }
  std::vector<Trajectory> trajectories;
  for (auto& job : jobs) trajectories.push_back(job.get());

  CommandResult result;
  for (std::size_t f = 0; f < ic.flows.size(); ++f) {
    const auto& traj = trajectories[f];
    const auto label = file_label(ic.flows[f]);
    CsvTable table({"t", "x", "p", "H_N", "H_lambda"});
    ojson rows = ojson::array();
    for (const auto& sample : traj.samples()) {
      const double h_n = additive_hamiltonian(sample.state, v, params);
      const double h_l = params.lambda().is_infinite()
                             ? h_n
                             : hierarchy::multiplicative_hamiltonian(sample.state, v, params);
      if (cfg.output.format == OutputFormat::csv) {
        table.row().add(sample.t).add(sample.state.x).add(sample.state.p).add(h_n).add(h_l);
      } else {
        rows.push_back(ojson::array({json_real(sample.t), json_real(sample.state.x),
                                     json_real(sample.state.p), json_real(h_n), json_real(h_l)}));
      }
    }
    if (cfg.output.format == OutputFormat::csv) {
      emit(result, out_dir / ("trajectory_" + label + ".csv"), table.str());
    } else {
      const ojson doc{{"flow", ic.flows[f].label()},
                      {"method", std::string(dynamics::to_string(ic.integrator.method))},
                      {"dt", ic.integrator.dt},
                      {"t_end", ic.integrator.t_end},
                      {"energy", json_real(traj.energy())},
                      {"columns", {"t", "x", "p", "H_N", "H_lambda"}},
                      {"rows", rows}};
      emit(result, out_dir / ("trajectory_" + label + ".json"), doc.dump() + "\n");
    }
  }
  return result;
}

CommandResult cmd_sweep(const RunConfig& cfg, const fs::path& out_dir) {
  using hierarchy::SeriesKind;
  const auto& v = cfg.system.potential;
  const double m = cfg.system.params.mass();
  const auto& sw = cfg.sweep;

  struct Row {
    double lambda, h_n, h_res, h_bound, l_res, p_res, rate;
    std::vector<double> weighted;
  };
  std::vector<std::future<Row>> jobs;
  for (double lam : sw.lambdas) {
    jobs.push_back(std::async(std::launch::async, [&, lam] {
      const SystemParams params(m, Lambda(lam));
      const PhaseState& s = sw.state;
      Row r{};
      r.lambda = lam;
      r.h_n = additive_hamiltonian(s, v, params);
      r.h_res = hierarchy::reduction_residual(SeriesKind::hamiltonian, s, v, params);
      r.h_bound = r.h_n * r.h_n / (2.0 * params.energy_scale());
      r.l_res = hierarchy::reduction_residual(SeriesKind::lagrangian, s, v, params);
      r.p_res = hierarchy::reduction_residual(SeriesKind::momentum, s, v, params);
      r.rate = dynamics::rate_factor(dynamics::FlowSpec::multiplicative(), r.h_n, params);
      for (int j : sw.rate_orders) r.weighted.push_back(dynamics::weighted_rate_factor(j, r.h_n, params));
      return r;
    }));
  }

  std::vector<std::string> header{"lambda",     "H_N",        "H_residual", "H_bound",
                                  "L_residual", "p_residual", "rate_multiplicative"};
  for (int j : sw.rate_orders) header.push_back("weighted_rate_j" + std::to_string(j));
  CsvTable table(header);
  ojson rows = ojson::array();
  for (auto& job : jobs) {
    const Row r = job.get();
    table.row().add(r.lambda).add(r.h_n).add(r.h_res).add(r.h_bound).add(r.l_res).add(r.p_res);
    table.add(r.rate);
    ojson row{{"lambda", r.lambda},          {"H_N", json_real(r.h_n)},
              {"H_residual", json_real(r.h_res)}, {"H_bound", json_real(r.h_bound)},
              {"L_residual", json_real(r.l_res)}, {"p_residual", json_real(r.p_res)},
              {"rate_multiplicative", json_real(r.rate)}};
    for (std::size_t k = 0; k < r.weighted.size(); ++k) {
      table.add(r.weighted[k]);
      row["weighted_rate_j" + std::to_string(sw.rate_orders[k])] = json_real(r.weighted[k]);
    }
    rows.push_back(row);
  }

  CommandResult result;
  if (cfg.output.format == OutputFormat::csv) {
    emit(result, out_dir / "sweep.csv", table.str());
  } else {
    const ojson doc{{"task", "sweep"},
                    {"system", system_json(cfg)},
                    {"state", {{"x", sw.state.x}, {"p", sw.state.p}}},
                    {"rows", rows}};
    emit(result, out_dir / "sweep.json", doc.dump(2) + "\n");
  }
  return result;
}

CommandResult cmd_verify(const RunConfig& cfg, const fs::path& out_dir) {
  CommandResult result;
  std::vector<RateComparison> rates;
  bool blew_up = false;
  for (const auto& suite : cfg.verify.suites) {
    try {
      SuiteReport report = run_suite(suite, cfg);
      result.checks.insert(result.checks.end(), report.checks.begin(), report.checks.end());
      rates.insert(rates.end(), report.rates.begin(), report.rates.end());
    } catch (const NumericalBlowUp&) {
      blew_up = true;
      result.checks.push_back(make_check(suite + ".blow_up", std::nan(""), 0.0));
    }
  }

  bool all_pass = true;
  for (const auto& c : result.checks) all_pass = all_pass && c.pass;

  if (cfg.output.format == OutputFormat::csv) {
    CsvTable table({"check", "value", "tolerance", "pass"});
    for (const auto& c : result.checks) table.row().add(c.check).add(c.value).add(c.tolerance).add(c.pass);
    emit(result, out_dir / "verify_report.csv", table.str());
  } else {
    ojson doc = ojson::array();
    for (const auto& c : result.checks)
      doc.push_back({{"check", c.check},
                     {"value", json_real(c.value)},
                     {"tolerance", json_real(c.tolerance)},
                     {"pass", c.pass}});
    emit(result, out_dir / "verify_report.json", doc.dump(2) + "\n");
  }

  if (!rates.empty()) {
    CsvTable table({"flow", "lambda", "energy", "derived_factor", "printed_factor",
                    "derived_distance", "printed_distance"});
    for (const auto& r : rates) {
      table.row().add(r.flow).add(r.lambda).add(r.energy).add(r.derived_factor);
      table.add(r.printed_factor).add(r.derived_distance).add(r.printed_distance);
    }
    emit(result, out_dir / "rate_factor_comparison.csv", table.str());
  }

  result.exit_code = blew_up ? exit_blow_up : (all_pass ? exit_ok : exit_verify_failed);
  return result;
}

CommandResult run_task(const RunConfig& cfg, const fs::path& out_dir) {
  switch (cfg.task) {
    case Task::eval:
      return cmd_eval(cfg, out_dir);
    case Task::integrate:
      return cmd_integrate(cfg, out_dir);
    case Task::verify:
      return cmd_verify(cfg, out_dir);
    case Task::sweep:
      return cmd_sweep(cfg, out_dir);
  }
  return {};
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiplicative Lagrangian/Hamiltonian hierarchy toolkit", "hamflow"};
  std::string task_name;
  std::string config_path;
  std::string out_dir;
  long long seed = 0;
  app.add_option("task", task_name, "eval | integrate | verify | sweep")
      ->required()
      ->check(CLI::IsMember({"eval", "integrate", "verify", "sweep"}));
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory (overrides output.path)");
  app.add_option("--seed", seed, "seed for random states in verify suites")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "hamflow: " << e.what() << "\n";
    return exit_config_error;
  }

  try {
    RunConfig cfg = load_config(config_path, parse_task(task_name));
    if (app.count("--seed")) cfg.verify.seed = static_cast<std::uint64_t>(seed);
    const fs::path dir = out_dir.empty() ? cfg.output.path : fs::path(out_dir);
    const CommandResult result = run_task(cfg, dir);
    for (const auto& c : result.checks)
      out << (c.pass ? "PASS " : "FAIL ") << c.check << " value=" << format_real(c.value)
          << " tolerance=" << format_real(c.tolerance) << "\n";
    for (const auto& f : result.files) out << "wrote " << f.string() << "\n";
    return result.exit_code;
  } catch (const NumericalBlowUp& e) {
    err << "hamflow: numerical blow-up: " << e.what() << "\n";
    return exit_blow_up;
  } catch (const std::exception& e) {
    err << "hamflow: " << e.what() << "\n";
    return exit_config_error;
  }
}

}  // namespace hamflow::cli
