#include "hamflow/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hamflow/hierarchy.hpp"

namespace hamflow::cli {

using nlohmann::json;

namespace {

std::string located(const std::string& field, const std::string& message, int line, int column) {
  std::ostringstream out;
  out << "config error";
  if (line > 0) {
    out << " (line " << line;
    if (column > 0) out << ", column " << column;
    out << ")";
  }
  if (!field.empty()) out << " at '" << field << "'";
  out << ": " << message;
  return out.str();
}

// Approximate source line of a dotted field path: successive key lookups in
// the raw text, each starting where the previous one matched.
int line_of(std::string_view text, const std::string& field) {
  std::size_t pos = 0;
  std::size_t found = std::string_view::npos;
  std::istringstream parts(field);
  std::string key;
  while (std::getline(parts, key, '.')) {
    key = key.substr(0, key.find('['));
    if (key.empty()) continue;
    const std::size_t at = text.find('"' + key + '"', pos);
    if (at == std::string_view::npos) break;
    found = at;
    pos = at + key.size() + 2;
  }
  if (found == std::string_view::npos) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(found), '\n'));
}

class Node {
 public:
  Node(const json& value, std::string path, std::string_view text)
      : value_(value), path_(std::move(path)), text_(text) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError(path_, message, line_of(text_, path_));
  }

  const json& raw() const { return value_; }
  const std::string& path() const { return path_; }

  Node child(const std::string& key) const {
    return {value_.at(key), path_.empty() ? key : path_ + "." + key, text_};
  }
  Node element(std::size_t i) const {
    return {value_.at(i), path_ + "[" + std::to_string(i) + "]", text_};
  }
  bool has(const std::string& key) const { return value_.contains(key); }

  void expect_object(std::initializer_list<std::string_view> allowed) const {
    if (!value_.is_object()) fail("expected an object");
    for (const auto& [key, unused] : value_.items()) {
      (void)unused;
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        Node(value_, path_.empty() ? key : path_ + "." + key, text_).fail("unknown field");
    }
  }

  std::size_t expect_array() const {
    if (!value_.is_array()) fail("expected an array");
    return value_.size();
  }

  double number() const {
    if (!value_.is_number()) fail("expected a number");
    const double v = value_.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  double positive() const {
    const double v = number();
    if (!(v > 0.0)) fail("must be > 0");
    return v;
  }

  long long integer() const {
    if (!value_.is_number_integer()) fail("expected an integer");
    return value_.get<long long>();
  }

  std::string string() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  bool boolean() const {
    if (!value_.is_boolean()) fail("expected true or false");
    return value_.get<bool>();
  }

 private:
  const json& value_;
  std::string path_;
  std::string_view text_;
};

PhaseState read_state(const Node& n) {
  n.expect_object({"x", "p"});
  if (!n.has("x") || !n.has("p")) n.fail("a state needs both x and p");
  return {n.child("x").number(), n.child("p").number()};
}

std::vector<double> read_numbers(const Node& n) {
  const std::size_t size = n.expect_array();
  std::vector<double> out;
  for (std::size_t i = 0; i < size; ++i) out.push_back(n.element(i).number());
  return out;
}

std::vector<double> read_increasing_grid(const Node& n) {
  auto grid = read_numbers(n);
  if (grid.empty()) n.fail("grid must not be empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) n.element(i).fail("must be > 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) n.element(i).fail("grid must be strictly increasing");
  }
  return grid;
}

std::vector<int> read_orders(const Node& n) {
  const std::size_t size = n.expect_array();
  std::vector<int> out;
  for (std::size_t i = 0; i < size; ++i) {
    const auto v = n.element(i).integer();
    if (v < 1 || v > hierarchy::TruncationOrder::max_order)
      n.element(i).fail("order must be in 1..64");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

Lambda read_lambda(const Node& n) {
  if (n.raw().is_string()) {
    const auto s = n.string();
    if (s == "inf" || s == "infinite" || s == "INFINITE") return Lambda::infinite();
    n.fail("expected a positive number or \"inf\"");
  }
  return Lambda(n.positive());
}

SystemConfig read_system(const Node& n) {
  n.expect_object({"potential", "m", "lambda"});
  SystemConfig out;
  double mass = 1.0;
  Lambda lambda = Lambda::infinite();
  if (n.has("m")) mass = n.child("m").positive();
  if (n.has("lambda")) lambda = read_lambda(n.child("lambda"));
  out.params = SystemParams(mass, lambda);

  if (!n.has("potential")) n.fail("missing field 'potential'");
  const Node pot = n.child("potential");
  pot.expect_object({"family", "coefficients"});
  if (!pot.has("family")) pot.fail("missing field 'family'");
  const Node fam = pot.child("family");
  PotentialFamily family{};
  try {
    family = parse_potential_family(fam.string());
  } catch (const std::invalid_argument&) {
    fam.fail("unknown potential family '" + fam.string() + "'");
  }
  std::vector<double> coeffs;
  if (pot.has("coefficients")) {
    coeffs = read_numbers(pot.child("coefficients"));
  } else if (family == PotentialFamily::harmonic) {
    coeffs = {1.0};
  }
  try {
    out.potential = Potential(family, coeffs);
  } catch (const std::exception& e) {
    pot.child(pot.has("coefficients") ? "coefficients" : "family").fail(e.what());
  }
  return out;
}

dynamics::IntegratorConfig read_integrator(const Node& n, dynamics::IntegratorConfig cfg) {
  if (n.has("method")) {
    const Node m = n.child("method");
    try {
      cfg.method = dynamics::parse_method(m.string());
    } catch (const std::invalid_argument&) {
      m.fail("unknown method '" + m.string() + "' (rk4 or leapfrog)");
    }
  }
  if (n.has("dt")) cfg.dt = n.child("dt").positive();
  if (n.has("t_end")) cfg.t_end = n.child("t_end").positive();
  return cfg;
}

EvalConfig read_eval(const Node& n) {
  n.expect_object({"J", "states"});
  EvalConfig out;
  if (n.has("J")) {
    const auto j = n.child("J").integer();
    if (j < 1 || j > hierarchy::TruncationOrder::max_order) n.child("J").fail("J must be in 1..64");
    out.order = static_cast<int>(j);
  }
  if (n.has("states")) {
    const Node states = n.child("states");
    const std::size_t size = states.expect_array();
    if (size == 0) states.fail("at least one state is required");
    out.states.clear();
    for (std::size_t i = 0; i < size; ++i) out.states.push_back(read_state(states.element(i)));
  }
  return out;
}

IntegrateConfig read_integrate(const Node& n, const SystemConfig& system) {
  n.expect_object({"method", "dt", "t_end", "start", "flows"});
  IntegrateConfig out;
  out.integrator = read_integrator(n, out.integrator);
  if (n.has("start")) out.start = read_state(n.child("start"));
  if (n.has("flows")) {
    const Node flows = n.child("flows");
    const std::size_t size = flows.expect_array();
    if (size == 0) flows.fail("at least one flow is required");
    out.flows.clear();
    for (std::size_t i = 0; i < size; ++i) {
      const Node f = flows.element(i);
      dynamics::FlowSpec spec;
      try {
        spec = dynamics::parse_flow_spec(f.string());
      } catch (const std::invalid_argument&) {
        f.fail("unknown flow '" + f.string() + "' (standard, j=<n>, multiplicative)");
      }
      if (std::find(out.flows.begin(), out.flows.end(), spec) != out.flows.end())
        f.fail("flow listed twice");
      if (spec.kind == dynamics::FlowKind::multiplicative && system.params.lambda().is_infinite())
        f.fail("the multiplicative flow needs a finite system.lambda");
      if (out.integrator.method == dynamics::Method::leapfrog &&
          spec.kind != dynamics::FlowKind::standard)
        f.fail("leapfrog is only valid for the standard flow");
      out.flows.push_back(spec);
    }
  }
  return out;
}

CanonicalConfig read_canonical(const Node& n) {
  n.expect_object({"generator", "alpha", "box", "lambda"});
  CanonicalConfig out;
  if (n.has("generator")) {
    out.generator = n.child("generator").string();
    const auto names = canonical::catalog_names();
    if (std::find(names.begin(), names.end(), out.generator) == names.end())
      n.child("generator").fail("unknown generator '" + out.generator + "'");
  }
  if (n.has("alpha")) out.alpha = n.child("alpha").number();
  if (n.has("lambda")) out.lambda = n.child("lambda").positive();
  if (n.has("box")) {
    const Node box = n.child("box");
    box.expect_object({"old", "new"});
    auto interval = [&](const std::string& key, canonical::Interval fallback) {
      if (!box.has(key)) return fallback;
      const Node iv = box.child(key);
      const auto v = read_numbers(iv);
      if (v.size() != 2 || !(v[0] < v[1])) iv.fail("expected [lo, hi] with lo < hi");
      return canonical::Interval{v[0], v[1]};
    };
    out.box.old_arg = interval("old", out.box.old_arg);
    out.box.new_arg = interval("new", out.box.new_arg);
  }
  return out;
}

VerifyConfig read_verify(const Node& n) {
  n.expect_object({"suites", "samples", "seed", "printed_rate_factor", "start", "method", "dt",
                   "t_end", "rescaling_t_end", "flow_lambdas", "rate_orders", "canonical"});
  VerifyConfig out;
  if (n.has("suites")) {
    const Node suites = n.child("suites");
    const std::size_t size = suites.expect_array();
    if (size == 0) suites.fail("suite selection must not be empty");
    out.suites.clear();
    std::set<std::string> seen;
    for (std::size_t i = 0; i < size; ++i) {
      const Node s = suites.element(i);
      const auto name = s.string();
      const auto& known = all_suites();
      if (std::find(known.begin(), known.end(), name) == known.end())
        s.fail("unknown suite '" + name + "'");
      if (!seen.insert(name).second) s.fail("suite listed twice");
      out.suites.push_back(name);
    }
  }
  if (n.has("samples")) {
    const auto s = n.child("samples").integer();
    if (s < 1 || s > 1000000) n.child("samples").fail("samples must be in 1..1000000");
    out.samples = static_cast<int>(s);
  }
  if (n.has("seed")) {
    const auto s = n.child("seed").integer();
    if (s < 0) n.child("seed").fail("seed must be non-negative");
    out.seed = static_cast<std::uint64_t>(s);
  }
  if (n.has("printed_rate_factor")) out.printed_rate_factor = n.child("printed_rate_factor").boolean();
  if (n.has("start")) out.start = read_state(n.child("start"));
  out.integrator = read_integrator(n, out.integrator);
  if (out.integrator.method != dynamics::Method::rk4)
    n.child("method").fail("verification suites integrate non-standard flows; use rk4");
  if (n.has("rescaling_t_end")) out.rescaling_t_end = n.child("rescaling_t_end").positive();
  if (n.has("flow_lambdas")) out.flow_lambdas = read_increasing_grid(n.child("flow_lambdas"));
  if (n.has("rate_orders")) out.rate_orders = read_orders(n.child("rate_orders"));
  if (n.has("canonical")) out.canonical = read_canonical(n.child("canonical"));
  return out;
}

SweepConfig read_sweep(const Node& n) {
  n.expect_object({"lambdas", "state", "rate_orders"});
  SweepConfig out;
  if (!n.has("lambdas")) n.fail("missing field 'lambdas'");
  out.lambdas = read_increasing_grid(n.child("lambdas"));
  if (n.has("state")) out.state = read_state(n.child("state"));
  if (n.has("rate_orders")) out.rate_orders = read_orders(n.child("rate_orders"));
  return out;
}

OutputConfig read_output(const Node& n) {
  n.expect_object({"path", "format"});
  OutputConfig out;
  if (n.has("path")) out.path = n.child("path").string();
  if (n.has("format")) {
    const auto f = n.child("format").string();
    if (f == "csv") {
      out.format = OutputFormat::csv;
    } else if (f == "json") {
      out.format = OutputFormat::json;
    } else {
      n.child("format").fail("format must be csv or json");
    }
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::string field, std::string message, int line, int column)
    : Error(located(field, message, line, column)),
      field_(std::move(field)),
      line_(line),
      column_(column) {}

std::string_view to_string(Task task) {
  switch (task) {
    case Task::eval:
      return "eval";
    case Task::integrate:
      return "integrate";
    case Task::verify:
      return "verify";
    case Task::sweep:
      return "sweep";
  }
  return "eval";
}

Task parse_task(std::string_view name) {
  for (Task t : {Task::eval, Task::integrate, Task::verify, Task::sweep})
    if (to_string(t) == name) return t;
  throw std::invalid_argument("unknown task '" + std::string(name) + "'");
}

RunConfig parse_config(std::string_view text, std::optional<Task> task) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    const auto head = text.substr(0, byte);
    const int line = 1 + static_cast<int>(std::count(head.begin(), head.end(), '\n'));
    const auto nl = head.rfind('\n');
    const int column = static_cast<int>(nl == std::string_view::npos ? byte + 1 : byte - nl);
    throw ConfigError("", "malformed JSON", line, column);
  }

  const Node root(doc, "", text);
  root.expect_object({"task", "system", "eval", "integrate", "verify", "sweep", "output"});

  RunConfig cfg;
  if (root.has("task")) {
    const Node t = root.child("task");
    try {
      cfg.task = parse_task(t.string());
    } catch (const std::invalid_argument&) {
      t.fail("unknown task '" + t.string() + "'");
    }
    if (task && *task != cfg.task)
      t.fail("file declares task '" + std::string(to_string(cfg.task)) +
             "' but '" + std::string(to_string(*task)) + "' was requested");
  } else if (task) {
    cfg.task = *task;
  } else {
    root.fail("no task given");
  }

  if (!root.has("system")) root.fail("missing section 'system'");
  try {
    cfg.system = read_system(root.child("system"));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    root.child("system").fail(e.what());
  }

  if (root.has("eval")) cfg.eval = read_eval(root.child("eval"));
  if (root.has("integrate")) cfg.integrate = read_integrate(root.child("integrate"), cfg.system);
  if (root.has("verify")) cfg.verify = read_verify(root.child("verify"));
  if (root.has("sweep")) {
    cfg.sweep = read_sweep(root.child("sweep"));
  } else if (cfg.task == Task::sweep) {
    root.fail("missing section 'sweep'");
  }
  if (root.has("output")) cfg.output = read_output(root.child("output"));

  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, std::optional<Task> task) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), task);
}

}  // namespace hamflow::cli
