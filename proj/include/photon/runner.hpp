#pragma once

#include "photon/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace photon::cli {

enum ExitCode { exit_ok = 0, exit_config = 1, exit_nonconvergence = 2 };

struct RunReport {
  int exit_code = exit_ok;
  std::vector<std::string> files;  // written artifacts, manifest last
  std::string message;
};

// Runs cfg.experiment, writing CSVs and manifest.json into cfg.output. Rows
// are flushed as they are produced, so a non-convergence exit keeps the
// partial results. Diagnostics go to `log`.
RunReport run(const RunConfig& cfg, std::ostream& log);

// "%.17g"
std::string format_double(double x);

} // namespace photon::cli
