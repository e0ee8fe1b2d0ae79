#include "photon/config.hpp"

#include <boost/version.hpp>
#include <Eigen/Core>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace photon::cli {

namespace {

const std::vector<std::pair<Experiment, std::string>>& experiment_table() {
  static const std::vector<std::pair<Experiment, std::string>> t{
      {Experiment::greens_table, "greens-table"},
      {Experiment::resonances, "resonances"},
      {Experiment::trace_epsilon, "trace-epsilon"},
      {Experiment::bound_states, "bound-states"},
      {Experiment::asymptotics_compare, "asymptotics-compare"},
      {Experiment::dynamics, "dynamics"}};
  return t;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a number, got '" + v + "'");
  }
  if (pos != v.size()) throw std::invalid_argument("expected a number, got '" + v + "'");
  return x;
}

int to_int(const std::string& v) {
  std::size_t pos = 0;
  long x = 0;
  try {
    x = std::stol(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected an integer, got '" + v + "'");
  }
  if (pos != v.size() || x < INT32_MIN || x > INT32_MAX) throw std::invalid_argument("expected an integer, got '" + v + "'");
  return static_cast<int>(x);
}

template <class T, class F>
std::vector<T> to_list(const std::string& v, F conv) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(conv(trim(item)));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> s{
      {"experiment",
       [](RunConfig& c, const std::string& v) {
         auto e = parse_experiment(v);
         if (!e) throw std::invalid_argument("unknown experiment '" + v + "'");
         c.experiment = e;
       }},
      {"d", [](RunConfig& c, const std::string& v) { c.params.d = to_int(v); }},
      {"c", [](RunConfig& c, const std::string& v) { c.params.c = to_double(v); }},
      {"g", [](RunConfig& c, const std::string& v) { c.params.g = to_double(v); }},
      {"Omega", [](RunConfig& c, const std::string& v) { c.params.Omega = to_double(v); }},
      {"epsilon", [](RunConfig& c, const std::string& v) { c.params.epsilon = to_double(v); }},
      {"scaling",
       [](RunConfig& c, const std::string& v) {
         if (v == "raw") c.params.scaling = nystrom::DensityScaling::raw;
         else if (v == "scaled") c.params.scaling = nystrom::DensityScaling::scaled;
         else throw std::invalid_argument("scaling must be 'raw' or 'scaled'");
       }},
      {"density", [](RunConfig& c, const std::string& v) { c.params.density = to_double(v); }},
      {"n_radial", [](RunConfig& c, const std::string& v) { c.n_radial = to_int(v); }},
      {"angular_factor", [](RunConfig& c, const std::string& v) { c.angular_factor = to_int(v); }},
      {"tol", [](RunConfig& c, const std::string& v) { c.tol = to_double(v); }},
      {"max_iter", [](RunConfig& c, const std::string& v) { c.max_iter = to_int(v); }},
      {"n_modes", [](RunConfig& c, const std::string& v) { c.n_modes = to_int(v); }},
      {"epsilons", [](RunConfig& c, const std::string& v) { c.epsilons = to_list<double>(v, to_double); }},
      {"dimensions", [](RunConfig& c, const std::string& v) { c.dimensions = to_list<int>(v, to_int); }},
      {"k_re", [](RunConfig& c, const std::string& v) { c.k_re = to_list<double>(v, to_double); }},
      {"k_im", [](RunConfig& c, const std::string& v) { c.k_im = to_list<double>(v, to_double); }},
      {"radii", [](RunConfig& c, const std::string& v) { c.radii = to_list<double>(v, to_double); }},
      {"rho0", [](RunConfig& c, const std::string& v) { c.rho0 = to_double(v); }},
      {"R", [](RunConfig& c, const std::string& v) { c.R = to_double(v); }},
      {"bs_nodes", [](RunConfig& c, const std::string& v) { c.bs_nodes = to_int(v); }},
      {"n_states", [](RunConfig& c, const std::string& v) { c.n_states = to_int(v); }},
      {"L", [](RunConfig& c, const std::string& v) { c.L = to_double(v); }},
      {"N", [](RunConfig& c, const std::string& v) { c.N = to_int(v); }},
      {"dt", [](RunConfig& c, const std::string& v) { c.dt = to_double(v); }},
      {"steps", [](RunConfig& c, const std::string& v) { c.steps = to_int(v); }},
      {"output_every", [](RunConfig& c, const std::string& v) { c.output_every = to_int(v); }},
      {"window_a", [](RunConfig& c, const std::string& v) { c.window_a = to_double(v); }},
      {"window_b", [](RunConfig& c, const std::string& v) { c.window_b = to_double(v); }},
      {"threads", [](RunConfig& c, const std::string& v) { c.threads = to_int(v); }},
      {"output", [](RunConfig& c, const std::string& v) { c.output = v; }},
  };
  return s;
}

} // namespace

std::string experiment_name(Experiment e) {
  for (const auto& [k, name] : experiment_table()) {
    if (k == e) return name;
  }
  return "unknown";
}

std::optional<Experiment> parse_experiment(const std::string& name) {
  for (const auto& [k, n] : experiment_table()) {
    if (n == name) return k;
  }
  return std::nullopt;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, _] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  cfg.source = source;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const std::string where = source + ":" + std::to_string(line) + ": ";
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(where + "unknown key '" + key + "'");
    if (cfg.set_keys.count(key)) {
      throw ConfigError(where + "duplicate key '" + key + "' (first set on line " + std::to_string(cfg.set_keys[key]) + ")");
    }
    if (value.empty()) throw ConfigError(where + "missing value for '" + key + "'");
    try {
      it->second(cfg, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + key + ": " + e.what());
    }
    cfg.set_keys[key] = line;
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  return parse_config(in, path);
}

void validate(const RunConfig& cfg) {
  auto fail = [&](const std::string& key, const std::string& why) {
    const auto it = cfg.set_keys.find(key);
    const std::string where =
        it == cfg.set_keys.end() ? cfg.source + ": " : cfg.source + ":" + std::to_string(it->second) + ": ";
    throw ConfigError(where + key + ": " + why);
  };
  auto positive = [&](const std::string& key, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) fail(key, "must be positive");
  };
  const auto& p = cfg.params;
  if (p.d < 1 || p.d > 3) fail("d", "must be 1, 2 or 3");
  positive("c", p.c);
  if (!std::isfinite(p.g)) fail("g", "must be finite");
  if (!std::isfinite(p.Omega)) fail("Omega", "must be finite");
  positive("epsilon", p.epsilon);
  positive("density", p.density);
  if (p.d == 1 && p.scaling == nystrom::DensityScaling::scaled && !(p.epsilon < 1.0)) {
    fail("epsilon", "d = 1 scaled density needs epsilon < 1");
  }
  if (cfg.n_radial < 4) fail("n_radial", "must be at least 4");
  if (cfg.angular_factor < 1) fail("angular_factor", "must be at least 1");
  positive("tol", cfg.tol);
  if (cfg.max_iter < 1) fail("max_iter", "must be at least 1");
  if (cfg.n_modes < 1) fail("n_modes", "must be at least 1");
  for (double e : cfg.epsilons) positive("epsilons", e);
  for (std::size_t i = 1; i < cfg.epsilons.size(); ++i) {
    if (!(cfg.epsilons[i] < cfg.epsilons[i - 1])) fail("epsilons", "must be strictly decreasing");
  }
  if (p.d == 1 && p.scaling == nystrom::DensityScaling::scaled && cfg.epsilons.front() >= 1.0) {
    fail("epsilons", "d = 1 scaled density needs epsilon < 1");
  }
  for (int d : cfg.dimensions) {
    if (d < 1 || d > 3) fail("dimensions", "entries must be 1, 2 or 3");
  }
  for (double kr : cfg.k_re) {
    if (!std::isfinite(kr)) fail("k_re", "must be finite");
    for (double ki : cfg.k_im) {
      if (!std::isfinite(ki)) fail("k_im", "must be finite");
      if (kr == 0.0 && ki != 0.0) fail("k_re", "purely imaginary k is not supported");
      if (kr < 0.0 && ki != 0.0) fail("k_im", "k with negative real part must be real");
    }
  }
  for (double r : cfg.radii) positive("radii", r);
  positive("rho0", cfg.rho0);
  positive("R", cfg.R);
  if (cfg.bs_nodes < 4) fail("bs_nodes", "must be at least 4");
  if (cfg.n_states < 1) fail("n_states", "must be at least 1");
  positive("L", cfg.L);
  if (cfg.N < 2 || (cfg.N & (cfg.N - 1)) != 0) fail("N", "must be a power of two");
  positive("dt", cfg.dt);
  if (cfg.steps < 0) fail("steps", "must be nonnegative");
  if (cfg.output_every < 1) fail("output_every", "must be at least 1");
  if (!(cfg.window_a < cfg.window_b)) fail("window_b", "must exceed window_a");
  if (cfg.threads < 1) fail("threads", "must be at least 1");
  if (cfg.output.empty()) fail("output", "must not be empty");
}

nlohmann::json manifest(const RunConfig& cfg) {
  using nlohmann::json;
  const auto& p = cfg.params;
  json m;
  m["version"] = PHOTON_VERSION;
  m["libraries"] = {{"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                  std::to_string(EIGEN_MINOR_VERSION)},
                    {"boost", BOOST_LIB_VERSION},
                    {"fftw", std::string(fftw_version)}};
  m["experiment"] = cfg.experiment ? experiment_name(*cfg.experiment) : "";
  m["params"] = {{"d", p.d},
                 {"c", p.c},
                 {"g", p.g},
                 {"Omega", p.Omega},
                 {"epsilon", p.epsilon},
                 {"scaling", p.scaling == nystrom::DensityScaling::raw ? "raw" : "scaled"},
                 {"density", p.density},
                 {"rho0_resolved", p.rho0()},
                 {"s0_resolved", p.s0()}};
  m["numerics"] = {{"n_radial", cfg.n_radial}, {"angular_factor", cfg.angular_factor}, {"tol", cfg.tol},
                   {"max_iter", cfg.max_iter}, {"n_modes", cfg.n_modes},           {"epsilons", cfg.epsilons}};
  m["greens_table"] = {{"dimensions", cfg.dimensions}, {"k_re", cfg.k_re}, {"k_im", cfg.k_im}, {"radii", cfg.radii}};
  m["bound_states"] = {{"rho0", cfg.rho0}, {"R", cfg.R}, {"bs_nodes", cfg.bs_nodes}, {"n_states", cfg.n_states}};
  m["dynamics"] = {{"L", cfg.L},           {"N", cfg.N},
                   {"dt", cfg.dt},         {"steps", cfg.steps},
                   {"output_every", cfg.output_every}, {"window_a", cfg.window_a},
                   {"window_b", cfg.window_b}};
  m["threads"] = cfg.threads;
  m["output"] = cfg.output;
  m["source"] = cfg.source;
  json defaulted = json::array();
  for (const auto& k : config_keys()) {
    if (!cfg.set_keys.count(k)) defaulted.push_back(k);
  }
  m["defaulted"] = defaulted;
  return m;
}

} // namespace photon::cli
