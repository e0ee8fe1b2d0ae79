#include "photon/eigensolver.hpp"

#include "photon/error.hpp"
#include "photon/specfun.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace photon::eigen {

namespace {

bool finite(cd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool near_excluded(cd z, const MullerOptions& opt) {
  for (cd r : opt.exclude) {
    if (std::abs(z - r) <= opt.exclude_radius * std::max(1.0, std::abs(r))) return true;
  }
  return false;
}

MullerResult muller_once(const std::function<cd(cd)>& f, std::array<cd, 3> x, const MullerOptions& opt) {
  // iterate on f / prod (z - r_k) so that earlier roots repel the iteration
  const auto g = [&](cd z, cd fz) {
    for (cd r : opt.exclude) fz /= (z - r);
    return fz;
  };
  std::array<cd, 3> fx, gx;
  for (int i = 0; i < 3; ++i) {
    fx[i] = f(x[i]);
    gx[i] = g(x[i], fx[i]);
  }
  MullerResult best;
  best.root = x[2];
  best.value = fx[2];
  for (int i = 0; i < 3; ++i) {
    if (std::abs(fx[i]) < std::abs(best.value)) {
      best.root = x[i];
      best.value = fx[i];
    }
  }
  for (int it = 1; it <= opt.max_iter; ++it) {
    best.iterations = it;
    const cd h1 = x[1] - x[0], h2 = x[2] - x[1];
    const cd d1 = (gx[1] - gx[0]) / h1, d2 = (gx[2] - gx[1]) / h2;
    const cd a = (d2 - d1) / (h2 + h1);
    const cd b = a * h2 + d2;
    const cd disc = std::sqrt(b * b - 4.0 * a * gx[2]);
    const cd den = std::abs(b + disc) >= std::abs(b - disc) ? b + disc : b - disc;
    cd next;
    if (den == 0.0 || !finite(den) || !finite(a)) {
      next = x[2] + 1e-8 * std::max(1.0, std::abs(x[2]));
    } else {
      next = x[2] - 2.0 * gx[2] / den;
    }
    if (!finite(next)) break;
    const cd fn = f(next);
    x = {x[1], x[2], next};
    fx = {fx[1], fx[2], fn};
    gx = {gx[1], gx[2], g(next, fn)};
    if (std::abs(fn) < std::abs(best.value) || !finite(best.value)) {
      best.root = next;
      best.value = fn;
    }
    if (std::abs(fn) <= opt.tol) {
      best.root = next;
      best.value = fn;
      best.converged = true;
      return best;
    }
    if (std::abs(x[2] - x[1]) <= 1e-15 * std::abs(x[2])) break;
  }
  return best;
}

} // namespace

EigenPair smallest_eigenpair(const Eigen::MatrixXcd& m) {
  if (!m.allFinite()) throw DomainError("characteristic_value: matrix has non-finite entries");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, true);
  if (es.info() != Eigen::Success) throw ConvergenceError("characteristic_value: eigensolver failed");
  Eigen::Index j = 0;
  es.eigenvalues().cwiseAbs().minCoeff(&j);
  return {es.eigenvalues()[j], es.eigenvectors().col(j).normalized()};
}

cd characteristic_value(const Eigen::MatrixXcd& m) {
  if (!m.allFinite()) throw DomainError("characteristic_value: matrix has non-finite entries");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  if (es.info() != Eigen::Success) throw ConvergenceError("characteristic_value: eigensolver failed");
  Eigen::Index j = 0;
  es.eigenvalues().cwiseAbs().minCoeff(&j);
  return es.eigenvalues()[j];
}

cd characteristic_value(const RadialOperator& op) { return characteristic_value(op.matrix); }

MullerResult muller_solve(const std::function<cd(cd)>& f, std::array<cd, 3> seeds, const MullerOptions& opt) {
  if (seeds[0] == seeds[1] || seeds[1] == seeds[2] || seeds[0] == seeds[2]) {
    throw DomainError("muller_solve: seeds must be distinct");
  }
  if (opt.max_iter < 1 || !(opt.tol > 0.0)) throw DomainError("muller_solve: bad tolerance or iteration limit");
  MullerResult result;
  for (int attempt = 0; attempt < 4; ++attempt) {
    auto s = seeds;
    const double spread = 1e-2 * attempt;
    for (cd& z : s) z *= cd(1.0 + spread, -0.5 * spread);
    auto r = muller_once(f, s, opt);
    r.iterations += result.iterations;
    result = r;
    if (!r.converged || !near_excluded(r.root, opt)) return result;
    result.converged = false;
  }
  return result;
}

double weighted_norm(const Eigen::VectorXcd& v, const QuadratureRule& rule) {
  double s = 0.0;
  for (int j = 0; j < v.size(); ++j) s += rule.volume[j] * std::norm(v[j]);
  return std::sqrt(s);
}

std::vector<double> limiting_spectrum(const PhysicalParams& params, const QuadratureRule& rule, int count) {
  if (count < 1) throw DomainError("limiting_spectrum: count must be positive");
  if (params.d == 1) return {2.0 * params.g * params.g * params.s0() / (specfun::pi * params.c)};
  const auto l0 = nystrom::build_kernel_operator(params, rule);
  Eigen::EigenSolver<Eigen::MatrixXd> es(l0.matrix.real(), false);
  if (es.info() != Eigen::Success) throw ConvergenceError("limiting_spectrum: eigensolver failed");
  std::vector<double> mu;
  for (int i = 0; i < es.eigenvalues().size(); ++i) mu.push_back(es.eigenvalues()[i].real());
  std::sort(mu.rbegin(), mu.rend());
  mu.resize(std::min<std::size_t>(mu.size(), count));
  return mu;
}

std::array<cd, 3> seeds_around(cd omega_j) {
  return {omega_j, omega_j * (1.0 - 1e-3), omega_j * cd(1.0, -1e-3)};
}

SpectrumResult solve_mode(const PhysicalParams& params, const QuadratureRule& rule, std::array<cd, 3> seeds,
                          const SolverOptions& opt, const std::vector<cd>& exclude) {
  const auto f = [&](cd omega) { return characteristic_value(nystrom::build_full_operator(params, omega, rule)); };
  MullerOptions mo;
  mo.tol = opt.tol;
  mo.max_iter = opt.max_iter;
  mo.exclude = exclude;
  SpectrumResult out;
  out.seed = seeds[0];
  const auto r = muller_solve(f, seeds, mo);
  out.omega = r.root;
  out.iterations = r.iterations;
  out.converged = r.converged;
  const auto m = nystrom::build_full_operator(params, r.root, rule);
  const auto pair = smallest_eigenpair(m.matrix);
  out.eigenvector = pair.vector / weighted_norm(pair.vector, rule);
  out.residual = (m.matrix * pair.vector).norm() / pair.vector.norm();
  std::ostringstream msg;
  if (!r.converged) {
    msg << "Muller did not converge: |f| = " << std::abs(r.value) << " after " << r.iterations << " iterations";
  } else if (r.root.imag() > 1e-9) {
    out.converged = false;
    msg << "root has Im omega = " << r.root.imag() << " > 0";
  }
  out.message = msg.str();
  return out;
}

std::vector<SpectrumResult> find_resonances(const PhysicalParams& params, int n_modes, const SolverOptions& opt) {
  if (n_modes < 1) throw DomainError("find_resonances: n_modes must be >= 1");
  params.validate();
  const auto rule = nystrom::make_rule(params.d, opt.n_radial, opt.angular_factor);
  const auto mu = limiting_spectrum(params, rule, n_modes);
  std::vector<SpectrumResult> found;
  std::vector<cd> roots;
  for (std::size_t j = 0; j < mu.size(); ++j) {
    auto r = solve_mode(params, rule, seeds_around(params.Omega - mu[j]), opt, roots);
    r.mode = static_cast<int>(j);
    if (r.converged) roots.push_back(r.omega);
    found.push_back(std::move(r));
  }
  // merge duplicates
  std::vector<SpectrumResult> out;
  for (auto& r : found) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const SpectrumResult& o) {
      return o.converged && r.converged && std::abs(o.omega - r.omega) <= 1e-8 * std::max(1.0, std::abs(o.omega));
    });
    if (!dup) out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SpectrumResult& a, const SpectrumResult& b) { return a.omega.real() < b.omega.real(); });
  return out;
}

ResonanceTrace trace_in_epsilon(const PhysicalParams& params, int mode, const std::vector<double>& epsilons,
                                const SolverOptions& opt, double continuity_tol) {
  if (epsilons.empty()) throw DomainError("trace_in_epsilon: empty epsilon list");
  for (std::size_t i = 0; i + 1 < epsilons.size(); ++i) {
    if (!(epsilons[i + 1] < epsilons[i])) throw DomainError("trace_in_epsilon: epsilon list must be strictly decreasing");
  }
  if (mode < 0) throw DomainError("trace_in_epsilon: mode must be >= 0");
  ResonanceTrace trace;
  trace.mode = mode;
  trace.continuity_tol = continuity_tol;
  const auto rule = nystrom::make_rule(params.d, opt.n_radial, opt.angular_factor);
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    PhysicalParams p = params;
    p.epsilon = epsilons[i];
    p.validate();
    cd guess;
    const auto& prev = trace.results;
    if (prev.empty()) {
      const auto mu = limiting_spectrum(p, rule, mode + 1);
      if (static_cast<int>(mu.size()) <= mode) throw DomainError("trace_in_epsilon: mode index beyond the limiting spectrum");
      guess = p.Omega - mu[mode];
    } else if (prev.size() == 1) {
      guess = prev.back().omega;
    } else {
      const double e1 = trace.epsilon[i - 1], e2 = trace.epsilon[i - 2];
      guess = prev.back().omega + (prev.back().omega - prev[i - 2].omega) * (epsilons[i] - e1) / (e1 - e2);
    }
    auto r = solve_mode(p, rule, seeds_around(guess), opt);
    r.mode = mode;
    bool jump = false;
    if (!prev.empty()) {
      jump = std::abs(r.omega - prev.back().omega) > continuity_tol * std::abs(prev.back().omega);
    }
    trace.epsilon.push_back(epsilons[i]);
    trace.continuity_break.push_back(jump);
    trace.results.push_back(std::move(r));
  }
  return trace;
}

} // namespace photon::eigen
