#pragma once

// Command-line front end.  Everything lives behind run() so the test suite can
// drive the tool in-process.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kirchhoff/kirchhoff.hpp"

namespace kirchhoff::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kFailure = 1, kValidation = 2, kNonconvergence = 3, kAssumption = 4 };

/// Raised for config problems; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the assumption check rejects the configuration; exit code 4.
class AssumptionFailure : public std::runtime_error {
 public:
  AssumptionFailure(const std::string& what, json report) : std::runtime_error(what), report_(std::move(report)) {}
  const json& report() const noexcept { return report_; }

 private:
  json report_;
};

struct SolverConfig {
  double tol = 1e-6;
  double abs_tol = std::numeric_limits<double>::infinity();
  int max_iters = 5000;
  std::string init = "one_minus_r";
  double step = 1.0;
  int path_points = 32;
};

struct RunConfig {
  ProblemParams params{};
  NonlinearityModel nonlinearity{};
  std::size_t grid_n = 1024;
  double grading = 2.0;
  SolverConfig solver{};
  std::uint64_t seed = 12345;
  bool reference_mode = false;
  bool force = false;
};

// ---------------------------------------------------------------------------
// Serialization: 17 significant digits for every number, null for non-finite.

inline std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_json(const json& j, std::string& out, int indent, int depth = 0) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write_json(it.value(), out, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ',';
        newline(depth + 1);
        write_json(j[i], out, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

inline std::string dump(const json& j, int indent = 2) {
  std::string s;
  write_json(j, s, indent);
  return s;
}

/// Wraps a double so that non-finite values serialize as null.
inline json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

// ---------------------------------------------------------------------------
// Config ingestion.

namespace detail {

inline void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError("config field '" + where + "' must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; });
    if (!ok) throw ConfigError("unknown config field '" + (where.empty() ? "" : where + ".") + it.key() + "'");
  }
}

inline double read_number(const json& obj, const char* key, const std::string& where, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_null() && std::string(key) == "abs_tol") return std::numeric_limits<double>::infinity();
  if (!v.is_number()) throw ConfigError("config field '" + where + "." + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError("config field '" + where + "." + key + "' must be finite");
  return x;
}

inline long long read_integer(const json& obj, const char* key, const std::string& where, long long fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError("config field '" + where + "." + key + "' must be an integer");
  return v.get<long long>();
}

}  // namespace detail

inline RunConfig parse_config(const json& root) {
  using detail::read_integer;
  using detail::read_number;
  detail::reject_unknown(root, "", {"params", "nonlinearity", "grid", "solver", "seed", "options"});
  RunConfig c;
  if (root.contains("params")) {
    const json& p = root.at("params");
    detail::reject_unknown(p, "params", {"a", "b", "mu", "lambda", "alpha1", "alpha2", "beta"});
    c.params.a = read_number(p, "a", "params", c.params.a);
    c.params.b = read_number(p, "b", "params", c.params.b);
    c.params.mu = read_number(p, "mu", "params", c.params.mu);
    c.params.lambda = read_number(p, "lambda", "params", c.params.lambda);
    c.params.alpha1 = read_number(p, "alpha1", "params", c.params.alpha1);
    c.params.alpha2 = read_number(p, "alpha2", "params", c.params.alpha2);
    c.params.beta = read_number(p, "beta", "params", c.params.beta);
  }
  if (root.contains("nonlinearity")) {
    const json& n = root.at("nonlinearity");
    detail::reject_unknown(n, "nonlinearity", {"q"});
    c.nonlinearity.q = read_number(n, "q", "nonlinearity", c.nonlinearity.q);
  }
  if (root.contains("grid")) {
    const json& g = root.at("grid");
    detail::reject_unknown(g, "grid", {"n", "grading"});
    const long long n = read_integer(g, "n", "grid", static_cast<long long>(c.grid_n));
    if (n < 4) throw ConfigError("config field 'grid.n' must be at least 4");
    c.grid_n = static_cast<std::size_t>(n);
    c.grading = read_number(g, "grading", "grid", c.grading);
  }
  if (root.contains("solver")) {
    const json& s = root.at("solver");
    detail::reject_unknown(s, "solver", {"tol", "abs_tol", "max_iters", "init", "step", "path_points"});
    c.solver.tol = read_number(s, "tol", "solver", c.solver.tol);
    c.solver.abs_tol = read_number(s, "abs_tol", "solver", c.solver.abs_tol);
    c.solver.max_iters = static_cast<int>(read_integer(s, "max_iters", "solver", c.solver.max_iters));
    c.solver.step = read_number(s, "step", "solver", c.solver.step);
    c.solver.path_points = static_cast<int>(read_integer(s, "path_points", "solver", c.solver.path_points));
    if (s.contains("init")) {
      if (!s.at("init").is_string()) throw ConfigError("config field 'solver.init' must be a string");
      c.solver.init = s.at("init").get<std::string>();
    }
  }
  if (root.contains("seed")) {
    if (!root.at("seed").is_number_unsigned()) throw ConfigError("config field 'seed' must be a nonnegative integer");
    c.seed = root.at("seed").get<std::uint64_t>();
  }
  if (root.contains("options")) {
    const json& o = root.at("options");
    detail::reject_unknown(o, "options", {"reference_mode", "force"});
    for (const char* k : {"reference_mode", "force"}) {
      if (o.contains(k) && !o.at(k).is_boolean()) {
        throw ConfigError(std::string("config field 'options.") + k + "' must be a boolean");
      }
    }
    c.reference_mode = o.value("reference_mode", false);
    c.force = o.value("force", false);
  }
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(root);
}

inline json to_json(const ProblemParams& p) {
  return {{"a", p.a}, {"b", p.b}, {"mu", p.mu}, {"lambda", p.lambda},
          {"alpha1", p.alpha1}, {"alpha2", p.alpha2}, {"beta", p.beta}};
}

inline json to_json(const RunConfig& c) {
  return {{"params", to_json(c.params)},
          {"nonlinearity", {{"q", c.nonlinearity.q}}},
          {"grid", {{"n", c.grid_n}, {"grading", c.grading}}},
          {"solver",
           {{"tol", c.solver.tol},
            {"abs_tol", num(c.solver.abs_tol)},
            {"max_iters", c.solver.max_iters},
            {"init", c.solver.init},
            {"step", c.solver.step},
            {"path_points", c.solver.path_points}}},
          {"seed", c.seed},
          {"options", {{"reference_mode", c.reference_mode}, {"force", c.force}}}};
}

inline json to_json(const AssumptionReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"message", c.message}});
  return {{"regime", std::string(to_string(r.regime))}, {"all_passed", r.all_passed()}, {"checks", checks}};
}

inline json to_json(const ThresholdReport& t) {
  json j = {{"regime", std::string(to_string(t.regime))},
            {"level", t.level},
            {"components", {{"a_term", t.a_term}, {"b_term", t.b_term}}},
            {"inputs", {{"alpha1", t.alpha1}, {"alpha2", num(t.alpha2)}, {"a", t.a}, {"b", t.b}, {"mu", t.mu}}}};
  if (t.nu_bar) j["nu_bar"] = *t.nu_bar;
  if (t.nu_tilde) j["nu_tilde"] = *t.nu_tilde;
  if (t.C_tilde) j["C_tilde"] = *t.C_tilde;
  if (t.rescale) j["rescale"] = *t.rescale;
  return j;
}

/// Checks the documented top-level report layout; returns the list of problems.
inline std::vector<std::string> validate_report(const json& r) {
  std::vector<std::string> errs;
  if (!r.is_object()) return {"report is not a JSON object"};
  const auto need = [&](const char* key, auto pred, const char* what) {
    if (!r.contains(key)) {
      errs.push_back(std::string("missing '") + key + "'");
    } else if (!pred(r.at(key))) {
      errs.push_back(std::string("'") + key + "' must be " + what);
    }
  };
  need("config", [](const json& v) { return v.is_object(); }, "an object");
  need("command", [](const json& v) { return v.is_string(); }, "a string");
  need("results", [](const json& v) { return v.is_object() || v.is_array(); }, "an object or array");
  need("diagnostics", [](const json& v) { return v.is_object(); }, "an object");
  need("version", [](const json& v) { return v.is_string(); }, "a string");
  for (auto it = r.begin(); it != r.end(); ++it) {
    const std::string& k = it.key();
    if (k != "config" && k != "command" && k != "results" && k != "diagnostics" && k != "version") {
      errs.push_back("unexpected top-level key '" + k + "'");
    }
  }
  return errs;
}

// ---------------------------------------------------------------------------
// Helpers shared by the subcommands.

inline std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double x = std::stod(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      out.push_back(x);
    } catch (const std::exception&) {
      throw ConfigError(std::string("cannot parse '") + item + "' in " + what);
    }
  }
  if (out.empty()) throw ConfigError(std::string(what) + " is empty");
  return out;
}

/// Seeded smooth direction (1 - r)(1 + sum_k c_k r^k), c_k uniform in [-0.9, 0.9] / k.
inline RadialFunction random_direction(const GridPtr& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-0.9, 0.9);
  std::vector<double> c(4);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = coef(rng) / static_cast<double>(k + 1);
  return RadialFunction::sample(grid, [&c](double r) {
    double poly = 1.0;
    double rk = 1.0;
    for (double ck : c) {
      rk *= r;
      poly += ck * rk;
    }
    return (1.0 - r) * poly;
  });
}

inline RadialFunction named_direction(const std::string& name, const GridPtr& grid, const RunConfig& c) {
  if (name == "singular") return SingularProbe(0.25).sample(grid);
  if (name == "random") return random_direction(grid, c.seed);
  return initial_profile(name, grid, c.params.alpha1);
}

inline DescentOptions descent_options(const SolverConfig& s) {
  return {.max_iters = s.max_iters, .step = s.step, .tol = s.tol, .abs_tol = s.abs_tol};
}

inline MountainPassOptions mountain_options(const SolverConfig& s) {
  MountainPassOptions o;
  o.path_points = s.path_points;
  o.max_iters = 4 * s.max_iters;
  o.tol = s.tol;
  o.abs_tol = s.abs_tol;
  return o;
}

/// Validates the parameters (exit 2) and the regime assumptions (exit 4).
/// With reference mode lambda = 0 is admitted; with force failures are only
/// reported.
inline AssumptionReport gate(const RunConfig& c) {
  c.params.validate();
  c.nonlinearity.validate(c.params);
  AssumptionReport rep = check_assumptions(c.params, c.nonlinearity, infer_regime(c.params));
  if (c.force) return rep;
  std::vector<std::string> failed;
  for (const auto& chk : rep.checks) {
    if (chk.passed) continue;
    if (chk.name == "lambda>0" && c.reference_mode) continue;
    failed.push_back(chk.name + ": " + chk.message);
  }
  if (!failed.empty()) {
    std::string msg = "assumption check failed";
    for (const auto& f : failed) msg += "\n  " + f;
    if (c.params.lambda == 0.0 && !c.reference_mode) msg += "\n  (lambda = 0 needs --reference-mode)";
    throw AssumptionFailure(msg, to_json(rep));
  }
  return rep;
}

struct SolveOutcome {
  GroundStateResult gs;
  std::optional<MountainPassResult> mp;
  ThresholdReport threshold;
};

inline SolveOutcome solve_instance(const RunConfig& c, const GridPtr& grid, bool with_mountain_pass) {
  const KirchhoffFunctional phi(grid, c.params, c.nonlinearity);
  const RadialFunction init = named_direction(c.solver.init, grid, c);
  SolveOutcome o{.gs = ground_state_search(phi, init, descent_options(c.solver)),
                 .mp = std::nullopt,
                 .threshold = threshold_for(c.params)};
  if (with_mountain_pass && c.params.lambda > 0.0) o.mp = mountain_pass_search(phi, init, mountain_options(c.solver));
  return o;
}

// ---------------------------------------------------------------------------
// Subcommands.  Each returns the results object and may add diagnostics.

struct CommandOutput {
  json results;
  json diagnostics = json::object();
  int exit_code = kOk;
  std::optional<std::string> csv;
};

inline CommandOutput cmd_constants(const std::vector<double>& alphas) {
  CommandOutput out;
  out.results = {{"rows", json::array()}};
  for (double a : alphas) {
    const double closed = best_constant(a);
    const double quad = rayleigh_quotient(a, 1.0, 100.0).value;
    out.results["rows"].push_back(
        {{"alpha", a}, {"closed_form", closed}, {"quadrature", quad}, {"relative_gap", std::fabs(quad - closed) / closed}});
  }
  return out;
}

inline CommandOutput cmd_extremal_verify(const std::vector<double>& alphas) {
  CommandOutput out;
  out.results = {{"rows", json::array()}};
  const auto radii = default_pde_radii();
  for (double a : alphas) {
    out.results["rows"].push_back({{"alpha", a},
                                   {"max_relative_residual", verify_extremal_pde(a, radii)},
                                   {"radii", {{"min", radii.front()}, {"max", radii.back()}, {"count", radii.size()}}}});
  }
  return out;
}

inline CommandOutput cmd_asymptotics(double alpha1, std::optional<double> alpha2, const std::vector<double>& eps,
                                     const GridPtr& grid) {
  const AsymptoticsReport rep = cutoff_asymptotics(alpha1, alpha2, eps, grid);
  CommandOutput out;
  json samples = json::array();
  for (const auto& s : rep.samples) {
    samples.push_back({{"eps", s.eps}, {"grad", s.grad}, {"crit1", s.crit1}, {"crit2", num(s.crit2)}});
  }
  out.results = {{"alpha1", alpha1},
                 {"alpha2", alpha2 ? json(*alpha2) : json(nullptr)},
                 {"limits", {{"grad", rep.limit_grad}, {"crit1", rep.limit_crit1},
                             {"crit2", rep.limit_crit2 ? json(*rep.limit_crit2) : json(nullptr)}}},
                 {"slope_grad", rep.slope_grad},
                 {"slope_crit1", rep.slope_crit1},
                 {"slope_crit2", rep.slope_crit2 ? json(*rep.slope_crit2) : json(nullptr)},
                 {"expected", {{"grad", 1.0}, {"crit1", 3.0 + alpha1},
                               {"crit2", alpha2 ? json(3.0 + *alpha2) : json(nullptr)}}},
                 {"samples", samples}};
  return out;
}

inline CommandOutput cmd_nehari(const RunConfig& c, const GridPtr& grid, const std::string& direction) {
  const AssumptionReport rep = gate(c);
  const RadialFunction u = named_direction(direction, grid, c);
  const NehariResult r = project_nehari(u, c.params, c.nonlinearity);
  CommandOutput out;
  out.results = {{"direction", direction},
                 {"t_u", r.t_u},
                 {"fiber_energy", r.fiber_energy},
                 {"root_bracket", {r.root_bracket.first, r.root_bracket.second}},
                 {"unique", r.unique},
                 {"sign_changes", r.sign_changes},
                 {"membership_residual", r.membership_residual}};
  out.diagnostics["assumptions"] = to_json(rep);
  return out;
}

inline CommandOutput cmd_solve(const RunConfig& c, const GridPtr& grid) {
  const AssumptionReport rep = gate(c);
  const SolveOutcome o = solve_instance(c, grid, true);
  CommandOutput out;
  out.results["ground_state"] = {{"level_m", o.gs.level_m},
                                 {"dual_residual", o.gs.dual_residual},
                                 {"iterations", o.gs.iterations},
                                 {"converged", o.gs.converged}};
  bool ok = o.gs.converged || c.params.lambda == 0.0;
  if (o.mp) {
    const double gap = std::fabs(o.mp->level_cstar - o.gs.level_m) / std::fabs(o.gs.level_m);
    out.results["mountain_pass"] = {{"level_cstar", o.mp->level_cstar},
                                    {"endpoint_energy", o.mp->endpoint_energy},
                                    {"iterations", o.mp->iterations},
                                    {"converged", o.mp->converged},
                                    {"peak_residual", o.mp->peak_residual},
                                    {"path_points", o.mp->path.size()}};
    out.results["agreement"] = {{"relative_gap", gap}, {"within_1pct", gap < 1e-2}};
    ok = ok && o.mp->converged;
  } else {
    out.results["mountain_pass"] = nullptr;
    out.diagnostics["notes"].push_back("lambda = 0: the infimum is not attained; mountain pass skipped");
  }
  out.results["threshold"] = o.threshold.level;
  out.diagnostics["assumptions"] = to_json(rep);
  if (!ok) out.exit_code = kNonconvergence;
  return out;
}

inline CommandOutput cmd_threshold(const RunConfig& c) {
  c.params.validate();
  CommandOutput out;
  out.results = to_json(threshold_for(c.params));
  return out;
}

inline CommandOutput cmd_compare(const RunConfig& c, const GridPtr& grid) {
  const AssumptionReport rep = gate(c);
  const SolveOutcome o = solve_instance(c, grid, false);
  const CompareReport cr = compare_report(o.gs, o.threshold);
  CommandOutput out;
  out.results = {{"below", cr.below},
                 {"margin", cr.margin},
                 {"level_m", o.gs.level_m},
                 {"threshold", to_json(o.threshold)},
                 {"dual_residual", o.gs.dual_residual},
                 {"converged", o.gs.converged}};
  out.diagnostics["assumptions"] = to_json(rep);
  if (!o.gs.converged && c.params.lambda > 0.0) out.exit_code = kNonconvergence;
  return out;
}

inline void set_param(RunConfig& c, const std::string& name, double v) {
  if (name == "a") c.params.a = v;
  else if (name == "b") c.params.b = v;
  else if (name == "mu") c.params.mu = v;
  else if (name == "lambda") c.params.lambda = v;
  else if (name == "alpha1") c.params.alpha1 = v;
  else if (name == "alpha2") c.params.alpha2 = v;
  else if (name == "beta") c.params.beta = v;
  else if (name == "q") c.nonlinearity.q = v;
  else throw ConfigError("cannot vary '" + name + "' (expected a, b, mu, lambda, alpha1, alpha2, beta or q)");
}

struct SweepRowOut {
  double value = 0.0;
  double primary = std::numeric_limits<double>::quiet_NaN();    // t_u or level_m
  double secondary = std::numeric_limits<double>::quiet_NaN();  // fiber energy or level_cstar
  double threshold = std::numeric_limits<double>::quiet_NaN();
  bool below = false;
  double residual = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  std::string status = "ok";
};

inline SweepRowOut sweep_point(RunConfig c, const GridPtr& grid, const std::string& vary, double value, bool nehari) {
  SweepRowOut row;
  row.value = value;
  try {
    set_param(c, vary, value);
    gate(c);
    row.threshold = threshold_for(c.params).level;
    if (nehari) {
      const NehariResult r = project_nehari(named_direction(c.solver.init, grid, c), c.params, c.nonlinearity);
      row.primary = r.t_u;
      row.secondary = r.fiber_energy;
      row.residual = r.membership_residual;
      row.below = r.fiber_energy < row.threshold;
    } else {
      const SolveOutcome o = solve_instance(c, grid, c.params.lambda > 0.0);
      row.primary = o.gs.level_m;
      row.secondary = o.mp ? o.mp->level_cstar : std::numeric_limits<double>::quiet_NaN();
      row.residual = o.gs.dual_residual;
      row.iterations = o.gs.iterations;
      row.below = o.gs.level_m < row.threshold;
      if (!o.gs.converged && c.params.lambda > 0.0) row.status = "nonconvergence";
    }
  } catch (const AssumptionFailure&) {
    row.status = "assumption";
  } catch (const NoRootError&) {
    row.status = "no_root";
  } catch (const GeometryError&) {
    row.status = "geometry";
  } catch (const NonconvergenceError&) {
    row.status = "nonconvergence";
  } catch (const std::invalid_argument&) {
    row.status = "invalid";
  }
  return row;
}

inline CommandOutput cmd_sweep(const RunConfig& c, const GridPtr& grid, const std::string& vary,
                               const std::vector<double>& values, const std::string& mode, int jobs) {
  if (mode != "solve" && mode != "nehari") throw ConfigError("sweep mode must be 'solve' or 'nehari'");
  if (jobs < 1) throw ConfigError("--jobs must be at least 1");
  RunConfig probe = c;
  set_param(probe, vary, values.front());
  const bool nehari = mode == "nehari";
  std::vector<SweepRowOut> rows(values.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) rows[i] = sweep_point(c, grid, vary, values[i], nehari);
  };
  const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), values.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string csv = vary + (nehari ? ",t_u,fiber_energy" : ",level_m,level_cstar") +
                    ",threshold,below,residual,iterations,status\n";
  CommandOutput out;
  out.results = json::array();
  for (const auto& r : rows) {
    csv += format_number(r.value) + ',' + format_number(r.primary) + ',' + format_number(r.secondary) + ',' +
           format_number(r.threshold) + ',' + (r.below ? "true" : "false") + ',' + format_number(r.residual) + ',' +
           std::to_string(r.iterations) + ',' + r.status + '\n';
    out.results.push_back({{"value", r.value}, {"primary", num(r.primary)}, {"secondary", num(r.secondary)},
                           {"threshold", num(r.threshold)}, {"below", r.below}, {"residual", num(r.residual)},
                           {"iterations", r.iterations}, {"status", r.status}});
  }
  out.csv = std::move(csv);
  return out;
}

// ---------------------------------------------------------------------------

/// Entry point.  Writes the report (JSON, or CSV for sweeps) to out or to
/// the --out file, messages to err; returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Radial solver for the double weighted critical Kirchhoff problem on the unit ball", "kirchhoff"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string config_path;
  std::string out_path;
  struct Flag {
    const char* name;
    double value = 0.0;
  };
  std::vector<Flag> flags = {{"--a"},      {"--b"},      {"--mu"},   {"--lambda"}, {"--alpha1"},
                             {"--alpha2"}, {"--beta"},   {"--q"},    {"--grading"}, {"--tol"},
                             {"--abs-tol"}, {"--step"}};
  long long grid_n = 0;
  long long max_iters = 0;
  long long path_points = 0;
  unsigned long long seed = 0;
  std::string init;
  bool reference_mode = false;
  bool force = false;
  std::string alpha_list = "-1.5,-1,-0.5,0,1,2";
  std::string eps_list = "0.2,0.1,0.05,0.02,0.01";
  std::string direction = "one_minus_r";
  std::string vary;
  std::string values;
  std::string mode = "solve";
  int jobs = 1;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    for (auto& f : flags) sub->add_option(f.name, f.value);
    sub->add_option("--n", grid_n, "grid cells");
    sub->add_option("--max-iters", max_iters);
    sub->add_option("--path-points", path_points);
    sub->add_option("--seed", seed);
    sub->add_option("--init", init, "initial profile: one_minus_r, bubble, singular or random");
    sub->add_flag("--reference-mode", reference_mode, "admit lambda = 0");
    sub->add_flag("--force", force, "report assumption failures instead of stopping");
  };

  auto* constants = app.add_subcommand("constants", "best constants S_alpha, closed form against quadrature");
  constants->add_option("--alpha", alpha_list, "comma-separated alphas");
  add_common(constants);
  auto* verify = app.add_subcommand("extremal-verify", "PDE residual of the extremal bubbles");
  verify->add_option("--alpha", alpha_list, "comma-separated alphas")->required();
  add_common(verify);
  auto* asym = app.add_subcommand("asymptotics", "fitted orders of the cutoff-bubble integrals");
  double asym_alpha1 = 0.0;
  double asym_alpha2 = 0.0;
  asym->add_option("--alpha1", asym_alpha1)->required();
  auto* asym_alpha2_opt = asym->add_option("--alpha2", asym_alpha2);
  asym->add_option("--eps", eps_list, "comma-separated decreasing eps in (0, 0.2]");
  asym->add_option("--config", config_path);
  asym->add_option("--out", out_path);
  asym->add_option("--n", grid_n);
  asym->add_option("--grading", flags[8].value);
  auto* nehari = app.add_subcommand("nehari", "Nehari projection of one direction");
  nehari->add_option("--direction", direction, "one_minus_r, bubble, singular or random");
  add_common(nehari);
  auto* solve = app.add_subcommand("solve", "ground state and mountain-pass level");
  add_common(solve);
  auto* threshold = app.add_subcommand("threshold", "compactness threshold of the regime");
  add_common(threshold);
  auto* compare = app.add_subcommand("compare", "ground-state level against the threshold");
  add_common(compare);
  auto* sweep = app.add_subcommand("sweep", "CSV sweep over one parameter");
  add_common(sweep);
  sweep->add_option("--vary", vary, "a, b, mu, lambda, alpha1, alpha2, beta or q")->required();
  sweep->add_option("--values", values, "comma-separated values")->required();
  sweep->add_option("--mode", mode, "solve or nehari");
  sweep->add_option("--jobs", jobs, "concurrent sweep points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kValidation;
  }

  CLI::App* sub = app.get_subcommands().front();
  const auto given = [sub](const char* name) {
    const CLI::Option* o = sub->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  const std::string command = sub->get_name();
  const auto started = std::chrono::steady_clock::now();
  json report;
  CommandOutput result;
  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    for (const auto& f : flags) {
      if (!given(f.name)) continue;
      const std::string n = f.name;
      if (n == "--grading") cfg.grading = f.value;
      else if (n == "--tol") cfg.solver.tol = f.value;
      else if (n == "--abs-tol") cfg.solver.abs_tol = f.value;
      else if (n == "--step") cfg.solver.step = f.value;
      else set_param(cfg, n.substr(2), f.value);
    }
    if (given("--n")) {
      if (grid_n < 4) throw ConfigError("--n must be at least 4");
      cfg.grid_n = static_cast<std::size_t>(grid_n);
    }
    if (given("--max-iters")) cfg.solver.max_iters = static_cast<int>(max_iters);
    if (given("--path-points")) cfg.solver.path_points = static_cast<int>(path_points);
    if (given("--seed")) cfg.seed = seed;
    if (given("--init")) cfg.solver.init = init;
    cfg.reference_mode = cfg.reference_mode || reference_mode;
    cfg.force = cfg.force || force;

    const auto grid = [&] { return make_grid(cfg.grid_n, cfg.grading); };
    if (sub == constants) {
      result = cmd_constants(parse_list(alpha_list, "--alpha"));
    } else if (sub == verify) {
      result = cmd_extremal_verify(parse_list(alpha_list, "--alpha"));
    } else if (sub == asym) {
      std::optional<double> a2;
      if (asym_alpha2_opt->count() > 0) a2.emplace(asym_alpha2);
      result = cmd_asymptotics(asym_alpha1, a2, parse_list(eps_list, "--eps"), grid());
    } else if (sub == nehari) {
      result = cmd_nehari(cfg, grid(), direction);
    } else if (sub == solve) {
      result = cmd_solve(cfg, grid());
    } else if (sub == threshold) {
      result = cmd_threshold(cfg);
    } else if (sub == compare) {
      result = cmd_compare(cfg, grid());
    } else {
      result = cmd_sweep(cfg, grid(), vary, parse_list(values, "--values"), mode, jobs);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const AssumptionFailure& e) {
    err << "error: " << e.what() << '\n';
    return kAssumption;
  } catch (const NonconvergenceError& e) {
    err << "error: " << e.what() << "\ntrace: " << e.trace() << '\n';
    return kNonconvergence;
  } catch (const NoRootError& e) {
    err << "error: " << e.what() << '\n';
    return kAssumption;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << '\n';
    return kAssumption;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }

  std::string payload;
  if (result.csv) {
    payload = *result.csv;
  } else {
    result.diagnostics["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    report = {{"config", to_json(cfg)},
              {"command", command},
              {"results", result.results},
              {"diagnostics", result.diagnostics},
              {"version", std::string(kVersion)}};
    payload = dump(report) + "\n";
  }
  if (out_path.empty()) {
    out << payload;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << out_path << "'\n";
      return kFailure;
    }
    f << payload;
  }
  if (result.exit_code == kNonconvergence) err << "warning: solver did not converge\n";
  return result.exit_code;
}

}  // namespace kirchhoff::cli
