#include "adjoint_cauchy/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "adjoint_cauchy/errors.hpp"
#include "adjoint_cauchy/fourier.hpp"
#include "io_util.hpp"

namespace acy {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
}

double number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return parse_number(j.get<std::string>());
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  throw ConfigError(where + ": expected a number or a ratio string");
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<int>();
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where + ": expected a string");
  return j.get<std::string>();
}

Trig parse_trig(const std::string& s, const std::string& where) {
  if (s == "cos") return Trig::cos;
  if (s == "sin") return Trig::sin;
  throw ConfigError(where + ": kind must be \"cos\" or \"sin\" (got \"" + s + "\")");
}

std::vector<TrigTerm> parse_terms(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of terms");
  std::vector<TrigTerm> terms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    check_keys(j[i], {"amplitude", "mode", "kind"}, at);
    TrigTerm t;
    t.amplitude = number(j[i].at("amplitude"), at + ".amplitude");
    t.mode = j[i].contains("mode") ? integer(j[i]["mode"], at + ".mode") : 0;
    t.kind = parse_trig(j[i].value("kind", std::string("cos")), at + ".kind");
    if (t.mode < 0) throw ConfigError(at + ".mode: must be non-negative");
    terms.push_back(t);
  }
  return terms;
}

std::vector<HarmonicTerm> parse_harmonic(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of terms");
  std::vector<HarmonicTerm> terms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    check_keys(j[i], {"amplitude", "mode", "kind", "growth"}, at);
    HarmonicTerm t;
    t.amplitude = number(j[i].at("amplitude"), at + ".amplitude");
    t.mode = j[i].contains("mode") ? integer(j[i]["mode"], at + ".mode") : 0;
    t.kind = parse_trig(j[i].value("kind", std::string("cos")), at + ".kind");
    const std::string growth = j[i].value("growth", std::string("positive"));
    if (growth != "positive" && growth != "negative") {
      throw ConfigError(at + ".growth: must be \"positive\" or \"negative\"");
    }
    t.positive = growth == "positive";
    if (t.mode < 0) throw ConfigError(at + ".mode: must be non-negative");
    terms.push_back(t);
  }
  return terms;
}

DataSpec parse_data(const json& j) {
  DataSpec spec;
  if (j.is_string()) {
    spec.name = j.get<std::string>();
    if (spec.name != "example1" && spec.name != "example2") {
      throw ConfigError("data: unknown built-in \"" + spec.name + "\" (use example1 or example2)");
    }
    return spec;
  }
  check_keys(j, {"harmonic", "u_bar", "q_bar", "omega_exact"}, "data");
  if (j.contains("harmonic")) {
    if (j.contains("u_bar") || j.contains("q_bar")) {
      throw ConfigError("data: give either \"harmonic\" or \"u_bar\"/\"q_bar\", not both");
    }
    spec.name = "harmonic";
    spec.harmonic = parse_harmonic(j["harmonic"], "data.harmonic");
    return spec;
  }
  if (!j.contains("u_bar") || !j.contains("q_bar")) {
    throw ConfigError("data: explicit Cauchy data needs both \"u_bar\" and \"q_bar\"");
  }
  spec.name = "explicit";
  spec.u_bar = parse_terms(j["u_bar"], "data.u_bar");
  spec.q_bar = parse_terms(j["q_bar"], "data.q_bar");
  if (j.contains("omega_exact")) spec.omega_exact = parse_terms(j["omega_exact"], "data.omega_exact");
  return spec;
}

SweepDirection parse_direction(const std::string& s) {
  if (s == "descending") return SweepDirection::descending;
  if (s == "ascending") return SweepDirection::ascending;
  throw ConfigError("sweep direction must be \"ascending\" or \"descending\" (got \"" + s + "\")");
}

StepStrategy strategy_from_json(const json& j) {
  if (j.is_string()) return parse_strategy(j.get<std::string>());
  if (!j.is_object() || !j.contains("type")) {
    throw ConfigError("strategy: expected an object with a \"type\"");
  }
  const std::string type = text(j["type"], "strategy.type");
  const std::string at = "strategy(" + type + ")";
  StepStrategy s;
  if (type == "armijo") {
    check_keys(j, {"type", "xi", "tau", "max_halvings"}, at);
    Armijo a;
    if (j.contains("xi")) a.xi = number(j["xi"], at + ".xi");
    if (j.contains("tau")) a.tau = number(j["tau"], at + ".tau");
    if (j.contains("max_halvings")) a.max_halvings = integer(j["max_halvings"], at + ".max_halvings");
    s = a;
  } else if (type == "constant") {
    check_keys(j, {"type", "rho"}, at);
    s = Constant{number(j.at("rho"), at + ".rho")};
  } else if (type == "optimal") {
    check_keys(j, {"type", "M", "N"}, at);
    s = OptimalTwoMode{integer(j.at("M"), at + ".M"), integer(j.at("N"), at + ".N")};
  } else if (type == "sweep") {
    check_keys(j, {"type", "M", "N", "direction", "tail_rho"}, at);
    ModeSweep m;
    m.low = integer(j.at("M"), at + ".M");
    m.high = integer(j.at("N"), at + ".N");
    if (j.contains("direction")) m.direction = parse_direction(text(j["direction"], at + ".direction"));
    if (j.contains("tail_rho")) m.tail_rho = number(j["tail_rho"], at + ".tail_rho");
    s = m;
  } else if (type == "schedule") {
    check_keys(j, {"type", "rho", "tail_rho"}, at);
    ExplicitSchedule e;
    const json& list = j.at("rho");
    if (!list.is_array()) throw ConfigError(at + ".rho: expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      e.rhos.push_back(number(list[i], at + ".rho[" + std::to_string(i) + "]"));
    }
    if (j.contains("tail_rho")) e.tail_rho = number(j["tail_rho"], at + ".tail_rho");
    s = e;
  } else {
    throw ConfigError("strategy: unknown type \"" + type + "\"");
  }
  try {
    validate(s);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

StopCriterion parse_criterion(const std::string& s) {
  if (s == "functional") return StopCriterion::functional;
  if (s == "gradient") return StopCriterion::gradient;
  if (s == "either") return StopCriterion::either;
  throw ConfigError("stop.criterion must be functional, gradient or either (got \"" + s + "\")");
}

BackendKind parse_backend(const std::string& s) {
  if (s == "fem") return BackendKind::fem;
  if (s == "spectral") return BackendKind::spectral;
  throw ConfigError("backend must be \"fem\" or \"spectral\" (got \"" + s + "\")");
}

double radial(const HarmonicTerm& t, double r) {
  if (t.mode == 0) return t.positive ? 1.0 : std::log(r);
  return t.positive ? std::pow(r, t.mode) : std::pow(r, -t.mode);
}

double radial_derivative(const HarmonicTerm& t, double r) {
  if (t.mode == 0) return t.positive ? 0.0 : 1.0 / r;
  return t.positive ? t.mode * std::pow(r, t.mode - 1) : -t.mode * std::pow(r, -t.mode - 1);
}

std::vector<HarmonicTerm> builtin_harmonic(const std::string& name) {
  if (name == "example1") return {{1.0, 2, Trig::cos, true}};
  // example2: u = r (2 sin - cos/2) + r^2 cos(2 theta) / 4
  return {{2.0, 1, Trig::sin, true}, {-0.5, 1, Trig::cos, true}, {0.25, 2, Trig::cos, true}};
}

}  // namespace

const char* to_string(BackendKind kind) noexcept {
  return kind == BackendKind::fem ? "fem" : "spectral";
}

double parse_number(const std::string& raw) {
  const auto parse_part = [&](std::string_view part) {
    double v = 0.0;
    const char* first = part.data();
    const char* last = part.data() + part.size();
    while (first < last && *first == ' ') ++first;
    while (last > first && last[-1] == ' ') --last;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
      throw ConfigError("cannot parse number \"" + raw + "\"");
    }
    return v;
  };
  const std::string_view sv(raw);
  const auto slash = sv.find('/');
  if (slash == std::string_view::npos) return parse_part(sv);
  const double num = parse_part(sv.substr(0, slash));
  const double den = parse_part(sv.substr(slash + 1));
  if (den == 0.0) throw ConfigError("zero denominator in \"" + raw + "\"");
  return num / den;
}

StepStrategy parse_strategy(const std::string& text_in) {
  const auto start = text_in.find_first_not_of(" \t");
  if (start == std::string::npos) throw ConfigError("empty strategy");
  if (text_in[start] == '{') {
    json j;
    try {
      j = json::parse(text_in);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("strategy JSON: ") + e.what());
    }
    return strategy_from_json(j);
  }
  // type[:key=value,...]; list values separated by '|'.
  json j;
  const auto colon = text_in.find(':');
  j["type"] = text_in.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
  if (colon != std::string::npos) {
    std::stringstream ss(text_in.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("strategy parameter \"" + item + "\" needs key=value");
      const std::string key = item.substr(0, eq);
      const std::string value = item.substr(eq + 1);
      if (key == "direction") {
        j[key] = value;
      } else if (key == "M" || key == "N" || key == "max_halvings") {
        try {
          j[key] = std::stoi(value);
        } catch (const std::exception&) {
          throw ConfigError("strategy parameter " + key + " must be an integer");
        }
      } else if (key == "rho" && j["type"] == "schedule") {
        json list = json::array();
        std::stringstream vs(value);
        std::string v;
        while (std::getline(vs, v, '|')) list.push_back(v);
        j[key] = list;
      } else {
        j[key] = value;
      }
    }
  }
  return strategy_from_json(j);
}

void ExperimentConfig::validate() const {
  try {
    mesh.validate();
    stop.validate();
    acy::validate(strategy);
    for (const auto& s : strategies) acy::validate(s);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (!(solver.relative_tolerance > 0.0)) throw ConfigError("solver.relative_tolerance must be positive");
  if (band_cap < 0) throw ConfigError("band_cap must be non-negative");
  if (backend == BackendKind::spectral && resolvable_mode(static_cast<std::size_t>(mesh.n_angular)) < band_cap) {
    throw ConfigError("spectral backend: n_angular = " + std::to_string(mesh.n_angular) +
                      " cannot resolve band_cap = " + std::to_string(band_cap) + " (need n_angular >= " +
                      std::to_string(2 * band_cap + 1) + ")");
  }
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root, {"radii", "mesh", "backend", "band_cap", "solver", "data", "initial_guess",
                    "strategy", "strategies", "stop", "output", "oracle_check"},
             "config");
  ExperimentConfig cfg;
  try {
    if (root.contains("radii")) {
      const json& r = root["radii"];
      check_keys(r, {"inner", "outer"}, "radii");
      if (r.contains("inner")) cfg.mesh.r_inner = number(r["inner"], "radii.inner");
      if (r.contains("outer")) cfg.mesh.r_outer = number(r["outer"], "radii.outer");
    }
    if (root.contains("mesh")) {
      const json& m = root["mesh"];
      check_keys(m, {"n_radial", "n_angular"}, "mesh");
      if (m.contains("n_radial")) cfg.mesh.n_radial = integer(m["n_radial"], "mesh.n_radial");
      if (m.contains("n_angular")) cfg.mesh.n_angular = integer(m["n_angular"], "mesh.n_angular");
    }
    if (root.contains("backend")) cfg.backend = parse_backend(text(root["backend"], "backend"));
    if (root.contains("band_cap")) cfg.band_cap = integer(root["band_cap"], "band_cap");
    if (root.contains("solver")) {
      const json& s = root["solver"];
      check_keys(s, {"relative_tolerance", "max_iterations"}, "solver");
      if (s.contains("relative_tolerance")) {
        cfg.solver.relative_tolerance = number(s["relative_tolerance"], "solver.relative_tolerance");
      }
      if (s.contains("max_iterations")) {
        const int n = integer(s["max_iterations"], "solver.max_iterations");
        if (n < 0) throw ConfigError("solver.max_iterations must be non-negative");
        cfg.solver.max_iterations = static_cast<std::size_t>(n);
      }
    }
    if (root.contains("data")) cfg.data = parse_data(root["data"]);
    if (root.contains("initial_guess")) cfg.initial_guess = parse_terms(root["initial_guess"], "initial_guess");
    if (root.contains("strategy")) cfg.strategy = strategy_from_json(root["strategy"]);
    if (root.contains("strategies")) {
      const json& list = root["strategies"];
      if (!list.is_array()) throw ConfigError("strategies: expected an array");
      for (const auto& s : list) cfg.strategies.push_back(strategy_from_json(s));
    }
    if (root.contains("stop")) {
      const json& s = root["stop"];
      check_keys(s, {"j_tol", "grad_eps", "max_iters", "criterion"}, "stop");
      if (s.contains("j_tol")) cfg.stop.j_tol = number(s["j_tol"], "stop.j_tol");
      if (s.contains("grad_eps")) cfg.stop.grad_eps = number(s["grad_eps"], "stop.grad_eps");
      if (s.contains("max_iters")) cfg.stop.max_iters = integer(s["max_iters"], "stop.max_iters");
      if (s.contains("criterion")) cfg.stop.criterion = parse_criterion(text(s["criterion"], "stop.criterion"));
    }
    if (root.contains("output")) cfg.output = text(root["output"], "output");
    if (root.contains("oracle_check")) {
      const json& o = root["oracle_check"];
      check_keys(o, {"modes", "tolerance", "refine", "min_shrink"}, "oracle_check");
      if (o.contains("modes")) {
        if (!o["modes"].is_array()) throw ConfigError("oracle_check.modes: expected an array");
        cfg.oracle.modes.clear();
        for (const auto& m : o["modes"]) cfg.oracle.modes.push_back(integer(m, "oracle_check.modes"));
      }
      if (o.contains("tolerance")) cfg.oracle.tolerance = number(o["tolerance"], "oracle_check.tolerance");
      if (o.contains("refine")) {
        if (!o["refine"].is_boolean()) throw ConfigError("oracle_check.refine: expected a boolean");
        cfg.oracle.refine = o["refine"].get<bool>();
      }
      if (o.contains("min_shrink")) cfg.oracle.min_shrink = number(o["min_shrink"], "oracle_check.min_shrink");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_override(ExperimentConfig& config, const std::string& key, const std::string& value) {
  if (key == "backend") {
    config.backend = parse_backend(value);
  } else if (key == "strategy") {
    config.strategy = parse_strategy(value);
  } else if (key == "j_tol") {
    config.stop.j_tol = parse_number(value);
  } else if (key == "max_iters") {
    try {
      config.stop.max_iters = std::stoi(value);
    } catch (const std::exception&) {
      throw ConfigError("max_iters override must be an integer");
    }
  } else if (key == "criterion") {
    config.stop.criterion = parse_criterion(value);
  } else if (key == "mesh") {
    const auto x = value.find('x');
    try {
      if (x == std::string::npos) throw std::invalid_argument("no separator");
      std::size_t used = 0;
      const int nr = std::stoi(value.substr(0, x), &used);
      if (used != x) throw std::invalid_argument("trailing text");
      const std::string rest = value.substr(x + 1);
      const int na = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("trailing text");
      config.mesh.n_radial = nr;
      config.mesh.n_angular = na;
    } catch (const std::exception&) {
      throw ConfigError("mesh override must look like <n_radial>x<n_angular> (got \"" + value + "\")");
    }
  } else if (key == "output") {
    config.output = value;
  } else {
    throw ConfigError("unknown override \"" + key + "\"");
  }
  config.validate();
}

double evaluate_terms(const std::vector<TrigTerm>& terms, double theta) {
  double sum = 0.0;
  for (const auto& t : terms) {
    sum += t.amplitude * (t.kind == Trig::cos ? std::cos(t.mode * theta) : std::sin(t.mode * theta));
  }
  return sum;
}

ProblemData resolve_data(const DataSpec& spec, double r_inner, double r_outer) {
  if (spec.name == "explicit") return {spec.u_bar, spec.q_bar, spec.omega_exact};
  const std::vector<HarmonicTerm> terms =
      spec.name == "harmonic" ? spec.harmonic : builtin_harmonic(spec.name);
  ProblemData data;
  data.omega_exact.emplace();
  for (const auto& t : terms) {
    data.u_bar.push_back({t.amplitude * radial(t, r_outer), t.mode, t.kind});
    data.q_bar.push_back({t.amplitude * radial_derivative(t, r_outer), t.mode, t.kind});
    data.omega_exact->push_back({t.amplitude * radial(t, r_inner), t.mode, t.kind});
  }
  return data;
}

std::unique_ptr<Backend> make_backend(const ExperimentConfig& config) {
  if (config.backend == BackendKind::fem) {
    return std::make_unique<FemBackend>(config.mesh, config.solver);
  }
  return std::make_unique<SpectralBackend>(config.mesh.r_inner, config.mesh.r_outer,
                                           static_cast<std::size_t>(config.mesh.n_angular),
                                           config.band_cap);
}

CauchyData make_cauchy_data(const Backend& backend, const ProblemData& data) {
  return {backend.sample(RingSide::outer, [&](double t) { return evaluate_terms(data.u_bar, t); }),
          backend.sample(RingSide::outer, [&](double t) { return evaluate_terms(data.q_bar, t); })};
}

ExperimentRun run_experiment(const ExperimentConfig& config, const Backend& backend,
                             const StepStrategy& strategy) {
  const ProblemData data = resolve_data(config.data, config.mesh.r_inner, config.mesh.r_outer);
  const CauchyData cauchy = make_cauchy_data(backend, data);
  std::optional<BoundaryFunction> omega0;
  if (config.initial_guess) {
    omega0 = backend.sample(RingSide::inner,
                            [&](double t) { return evaluate_terms(*config.initial_guess, t); });
  }

  ExperimentRun out;
  out.label = label(strategy);
  const auto t0 = std::chrono::steady_clock::now();
  out.result = run(backend, cauchy, strategy, config.stop, omega0);
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (data.omega_exact) {
    out.omega_exact = backend.sample(RingSide::inner,
                                     [&](double t) { return evaluate_terms(*data.omega_exact, t); });
  }
  return out;
}

ExperimentRun run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto backend = make_backend(config);
  return run_experiment(config, *backend, config.strategy);
}

std::string summary_json(const ExperimentConfig& config, const ExperimentRun& run) {
  const RunResult& r = run.result;
  nlohmann::ordered_json j;
  j["backend"] = to_string(config.backend);
  j["strategy"] = run.label;
  j["status"] = to_string(r.status);
  j["converged"] = r.converged();
  j["iterations"] = r.iterations();
  j["final_functional"] = r.final_functional;
  j["primary_solves"] = r.counters.primary;
  j["adjoint_solves"] = r.counters.adjoint;
  j["line_search_solves"] = r.counters.line_search;
  j["total_direct_solves"] = r.iteration_solves();
  j["verification_solves"] = r.counters.primary + r.counters.adjoint + r.counters.line_search -
                             r.iteration_solves();
  j["stop_criterion"] = to_string(config.stop.criterion);
  j["j_tol"] = config.stop.j_tol;
  j["mesh"] = {{"n_radial", config.mesh.n_radial}, {"n_angular", config.mesh.n_angular}};
  if (run.omega_exact) {
    double err = 0.0;
    for (std::size_t k = 0; k < r.omega.size(); ++k) {
      err = std::max(err, std::abs(r.omega.values[k] - run.omega_exact->values[k]));
    }
    j["omega_max_error"] = err;
  }
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  j["wall_time_seconds"] = run.wall_seconds;
  return j.dump(2) + "\n";
}

void write_run_outputs(const ExperimentConfig& config, const ExperimentRun& run,
                       const std::filesystem::path& prefix) {
  write_history_csv(run.result.history, detail::prefixed(prefix, "history.csv"));
  {
    auto out = detail::open_output(detail::prefixed(prefix, "omega_final.csv"));
    const BoundaryFunction& omega = run.result.omega;
    out << (run.omega_exact ? "theta,omega,omega_exact,error\n" : "theta,omega\n");
    for (std::size_t k = 0; k < omega.size(); ++k) {
      out << detail::format_double(omega.angle(k)) << ',' << detail::format_double(omega.values[k]);
      if (run.omega_exact) {
        const double exact = run.omega_exact->values[k];
        out << ',' << detail::format_double(exact) << ','
            << detail::format_double(omega.values[k] - exact);
      }
      out << '\n';
    }
  }
  auto out = detail::open_output(detail::prefixed(prefix, "summary.json"));
  out << summary_json(config, run);
}

CompareResult run_compare(const ExperimentConfig& config) {
  config.validate();
  if (config.strategies.size() < 2) {
    throw ConfigError("compare needs at least two entries in \"strategies\"");
  }
  // Each strategy gets its own backend so the tasks share nothing but the config.
  std::vector<std::future<ExperimentRun>> jobs;
  for (const auto& s : config.strategies) {
    jobs.push_back(std::async(std::launch::async, [&config, s] {
      const auto backend = make_backend(config);
      return run_experiment(config, *backend, s);
    }));
  }
  CompareResult result;
  for (auto& job : jobs) result.runs.push_back(job.get());

  std::map<std::string, int> seen;
  for (auto& r : result.runs) {
    const int n = ++seen[r.label];
    if (n > 1) r.label += "-" + std::to_string(n);
  }
  return result;
}

void write_compare_outputs(const ExperimentConfig& config, const CompareResult& result,
                           const std::filesystem::path& prefix) {
  std::size_t rows = 0;
  for (const auto& r : result.runs) {
    write_run_outputs(config, r, detail::prefixed(prefix, r.label + "/"));
    rows = std::max(rows, r.result.history.size() + 1);
  }
  auto out = detail::open_output(detail::prefixed(prefix, "compare.csv"));
  out << "k";
  for (const auto& r : result.runs) out << ",J_" << r.label;
  out << '\n';
  for (std::size_t k = 0; k < rows; ++k) {
    out << k;
    for (const auto& r : result.runs) {
      out << ',';
      const auto& h = r.result.history;
      if (k < h.size()) {
        out << detail::format_double(h[k].functional);
      } else if (k == h.size()) {
        out << detail::format_double(r.result.final_functional);
      }
    }
    out << '\n';
  }
}

MeshInfo mesh_info(const AnnulusSpec& spec) {
  const AnnulusMesh mesh = generate_mesh(spec);
  MeshInfo info;
  info.nodes = mesh.node_count();
  info.triangles = mesh.triangle_count();
  info.ring_nodes = mesh.ring(RingSide::inner).size();
  info.area = mesh.total_area();
  info.exact_area = std::numbers::pi * (spec.r_outer * spec.r_outer - spec.r_inner * spec.r_inner);
  info.min_triangle_area = std::numeric_limits<double>::infinity();
  for (const auto& t : mesh.triangles()) {
    info.min_triangle_area = std::min(info.min_triangle_area, mesh.signed_area(t));
  }
  return info;
}

}  // namespace acy
