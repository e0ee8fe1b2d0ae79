#include "photon/runner.hpp"

#include "photon/asymptotics.hpp"
#include "photon/boundstates.hpp"
#include "photon/dynamics.hpp"
#include "photon/eigensolver.hpp"
#include "photon/error.hpp"
#include "photon/greens.hpp"
#include "photon/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace photon::cli {

namespace fs = std::filesystem;
using cd = std::complex<double>;

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

class Csv {
 public:
  Csv(const fs::path& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw ConfigError("cannot write " + path.string());
    row_strings(header);
  }

  template <class... T>
  void row(const T&... v) {
    std::vector<std::string> cells{cell(v)...};
    row_strings(cells);
  }

 private:
  static std::string cell(double x) { return format_double(x); }
  static std::string cell(int x) { return std::to_string(x); }

  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
    out_.flush();
  }

  std::ofstream out_;
};

eigen::SolverOptions solver_options(const RunConfig& cfg) {
  eigen::SolverOptions o;
  o.n_radial = cfg.n_radial;
  o.angular_factor = cfg.angular_factor;
  o.tol = cfg.tol;
  o.max_iter = cfg.max_iter;
  o.threads = cfg.threads;
  return o;
}

struct Context {
  const RunConfig& cfg;
  std::ostream& log;
  RunReport& report;

  fs::path file(const std::string& name) {
    const fs::path p = fs::path(cfg.output) / name;
    report.files.push_back(p.string());
    return p;
  }
  void fail(const std::string& why) {
    report.exit_code = exit_nonconvergence;
    if (!report.message.empty()) report.message += "; ";
    report.message += why;
    log << "non-convergence: " << why << '\n';
  }
};

void greens_table(Context& ctx) {
  const auto& cfg = ctx.cfg;
  Csv csv(ctx.file("greens_table.csv"), {"d", "re_k", "im_k", "r", "re_G", "im_G"});
  for (int d : cfg.dimensions) {
    for (double kr : cfg.k_re) {
      for (double ki : cfg.k_im) {
        const auto k = greens::WaveNumber::physical(cd(kr, ki));
        for (double r : cfg.radii) {
          const cd G = greens::green(d, k, r);
          csv.row(d, kr, ki, r, G.real(), G.imag());
        }
      }
    }
  }
}

void resonances(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto res = eigen::find_resonances(cfg.params, cfg.n_modes, solver_options(cfg));
  Csv csv(ctx.file("resonances.csv"), {"j", "re_omega", "im_omega", "residual", "iterations"});
  int j = 0;
  for (const auto& r : res) {
    if (!r.converged) {
      ctx.fail("mode seeded at " + format_double(r.seed.real()) + " " + format_double(r.seed.imag()) + "i: " + r.message);
      continue;
    }
    csv.row(j++, r.omega.real(), r.omega.imag(), r.residual, r.iterations);
  }
  ctx.log << "resonances: " << j << " converged of " << cfg.n_modes << " requested\n";
}

int trace_modes(const RunConfig& cfg) { return cfg.params.d == 1 ? 1 : cfg.n_modes; }

void trace_epsilon(Context& ctx) {
  const auto& cfg = ctx.cfg;
  Csv csv(ctx.file("trace.csv"), {"j", "epsilon", "re_omega", "im_omega"});
  for (int j = 0; j < trace_modes(cfg); ++j) {
    const auto tr = eigen::trace_in_epsilon(cfg.params, j, cfg.epsilons, solver_options(cfg));
    for (std::size_t i = 0; i < tr.epsilon.size(); ++i) {
      const auto& r = tr.results[i];
      if (!r.converged) {
        ctx.fail("mode " + std::to_string(j) + " at epsilon " + format_double(tr.epsilon[i]) + ": " + r.message);
        break;
      }
      if (tr.continuity_break[i]) {
        ctx.log << "warning: mode " << j << " jumps at epsilon " << format_double(tr.epsilon[i]) << '\n';
      }
      csv.row(j, tr.epsilon[i], r.omega.real(), r.omega.imag());
    }
  }
}

void bound_states(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto profile = bound::DensityProfile::square(cfg.params.d, cfg.rho0, cfg.R);
  Csv csv(ctx.file("bound_states.csv"), {"mode", "omega", "mu_check"});
  for (int n = 1; n <= cfg.n_states; ++n) {
    const auto r = bound::solve_bound_state(profile, cfg.params, n, cfg.bs_nodes, cfg.tol);
    if (!r.found) {
      ctx.log << "bound-states: no state " << n << ": " << r.message << '\n';
      break;
    }
    const double mu = bound::mu_spectrum(bound::build_bs_operator(profile, r.omega, cfg.params, cfg.bs_nodes), n)[n - 1];
    csv.row(n, r.omega, mu);
  }
}

void asymptotics_compare(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& p = cfg.params;
  std::vector<asym::LimitingMode> modes;
  if (p.d != 1) modes = asym::limiting_modes(p, cfg.n_modes, cfg.n_radial);
  for (int j = 0; j < trace_modes(cfg); ++j) {
    Csv csv(ctx.file("asymptotics_mode" + std::to_string(j) + ".csv"),
            {"epsilon", "re_num", "im_num", "re_asym", "im_asym"});
    const auto tr = eigen::trace_in_epsilon(p, j, cfg.epsilons, solver_options(cfg));
    for (std::size_t i = 0; i < tr.epsilon.size(); ++i) {
      const auto& r = tr.results[i];
      if (!r.converged) {
        ctx.fail("mode " + std::to_string(j) + " at epsilon " + format_double(tr.epsilon[i]) + ": " + r.message);
        break;
      }
      const double eps = tr.epsilon[i];
      cd a;
      if (p.d == 3) a = asym::resonance_expansion_3d(modes[j], p, eps);
      else if (p.d == 2) a = asym::resonance_expansion_2d(modes[j], p, eps, true);
      else a = asym::resonance_expansion_1d(p, eps);
      csv.row(eps, r.omega.real(), r.omega.imag(), a.real(), a.imag());
    }
  }
}

// Square inclusion rho0 on [-R, R], atoms excited: psi = 0, phi = sqrt(rho).
void dynamics(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const dyn::Grid1D grid{cfg.L, cfg.N};
  dyn::DynamicsParams dp;
  dp.c = cfg.params.c;
  dp.g = cfg.params.g;
  dp.Omega = cfg.params.Omega;
  dp.rho = dyn::square_density(grid, cfg.rho0, cfg.R);
  dyn::FieldState s0{grid, std::vector<cd>(grid.N), std::vector<cd>(grid.N), 0.0};
  for (int j = 0; j < grid.N; ++j) s0.phi[j] = std::sqrt(dp.rho[j]);
  Csv csv(ctx.file("dynamics.csv"), {"t", "mass", "window_mass", "survival"});
  auto emit = [&](const dyn::FieldState& s) {
    csv.row(s.t, dyn::mass(s), dyn::window_mass(s, cfg.window_a, cfg.window_b), dyn::survival_probability(s0, s));
  };
  emit(s0);
  dyn::Evolver ev(grid, dp);
  int count = 0;
  try {
    ev.evolve(s0, cfg.dt, cfg.steps, [&](const dyn::FieldState& s) {
      if (++count % cfg.output_every == 0) emit(s);
    });
  } catch (const ConvergenceError& e) {
    ctx.fail(e.what());
  }
}

} // namespace

RunReport run(const RunConfig& cfg, std::ostream& log) {
  RunReport report;
  if (!cfg.experiment) {
    report.exit_code = exit_config;
    report.message = cfg.source + ": no experiment given";
    return report;
  }
  std::error_code ec;
  fs::create_directories(cfg.output, ec);
  if (ec) {
    report.exit_code = exit_config;
    report.message = "cannot create output directory " + cfg.output + ": " + ec.message();
    return report;
  }
  set_thread_count(cfg.threads);
  Context ctx{cfg, log, report};
  try {
    switch (*cfg.experiment) {
      case Experiment::greens_table: greens_table(ctx); break;
      case Experiment::resonances: resonances(ctx); break;
      case Experiment::trace_epsilon: trace_epsilon(ctx); break;
      case Experiment::bound_states: bound_states(ctx); break;
      case Experiment::asymptotics_compare: asymptotics_compare(ctx); break;
      case Experiment::dynamics: dynamics(ctx); break;
    }
  } catch (const DomainError& e) {
    report.exit_code = exit_config;
    report.message = e.what();
  } catch (const ConfigError& e) {
    report.exit_code = exit_config;
    report.message = e.what();
  } catch (const ConvergenceError& e) {
    report.exit_code = exit_nonconvergence;
    report.message = e.what();
  }
  auto m = manifest(cfg);
  m["exit_code"] = report.exit_code;
  m["message"] = report.message;
  m["artifacts"] = report.files;
  const fs::path mp = fs::path(cfg.output) / "manifest.json";
  std::ofstream(mp) << m.dump(2) << '\n';
  report.files.push_back(mp.string());
  return report;
}

} // namespace photon::cli
