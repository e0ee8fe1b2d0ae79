#pragma once

// Run configuration: a plain `key = value` file, one key per line, `#`
// comments, lists comma-separated. Unknown or repeated keys are rejected.

#include "photon/nystrom.hpp"

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace photon::cli {

enum class Experiment { greens_table, resonances, trace_epsilon, bound_states, asymptotics_compare, dynamics };

std::string experiment_name(Experiment e);
std::optional<Experiment> parse_experiment(const std::string& name);

// Message is prefixed with "source:line: " when the line is known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<Experiment> experiment;  // may be supplied by the subcommand instead
  nystrom::PhysicalParams params;

  // numerics
  int n_radial = nystrom::default_radial_nodes;
  int angular_factor = 4;
  double tol = 1e-10;
  int max_iter = 50;
  int n_modes = 5;
  std::vector<double> epsilons{0.1, 0.05, 0.025, 0.0125};

  // greens-table
  std::vector<int> dimensions{1, 2, 3};
  std::vector<double> k_re{-1.0, 0.5, 1.0};
  std::vector<double> k_im{0.0};
  std::vector<double> radii{0.01, 0.1, 0.5, 1.0, 2.0};

  // bound-states: square density rho0 on a ball of radius R (interval [-R, R] in d = 1)
  double rho0 = 1.0;
  double R = 1.0;
  int bs_nodes = 64;
  int n_states = 1;

  // dynamics
  double L = 64.0;
  int N = 4096;
  double dt = 0.01;
  int steps = 2600;
  int output_every = 10;
  double window_a = -1.0;
  double window_b = 1.0;

  int threads = 1;
  std::string output = ".";

  std::map<std::string, int> set_keys;  // key -> line of every explicitly set key
  std::string source = "<config>";
};

// Keys accepted in a config file.
const std::vector<std::string>& config_keys();

RunConfig parse_config(std::istream& in, const std::string& source);
RunConfig load_config(const std::string& path);

// Throws ConfigError anchored at the offending key's line.
void validate(const RunConfig& cfg);

// Every resolved parameter, library versions and the list of defaulted keys.
nlohmann::json manifest(const RunConfig& cfg);

} // namespace photon::cli
