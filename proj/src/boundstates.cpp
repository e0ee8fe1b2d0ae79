#include "photon/boundstates.hpp"

#include "photon/error.hpp"
#include "photon/parallel.hpp"
#include "photon/quadrature.hpp"
#include "photon/specfun.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace photon::bound {

namespace {

using specfun::pi;

constexpr double tiny_argument = 1e-9;

double green1(const greens::WaveNumber& k, double u) {
  if (u >= tiny_argument) return greens::green(1, k, u).real();
  return greens::green(1, k, tiny_argument).real() - std::log(u / tiny_argument) / pi;
}

double coupling(const PhysicalParams& params, double omega, double rho0) {
  return params.g * params.g * rho0 / (params.c * (params.Omega + std::abs(omega)));
}

Eigen::MatrixXd symmetric_part(const Eigen::MatrixXd& w, const std::vector<double>& weights) {
  const int n = static_cast<int>(weights.size());
  Eigen::VectorXd sq(n);
  for (int j = 0; j < n; ++j) sq[j] = std::sqrt(weights[j]);
  const Eigen::MatrixXd s = sq.asDiagonal() * w * sq.cwiseInverse().asDiagonal();
  return 0.5 * (s + s.transpose());
}

double mu_n(const DensityProfile& profile, double omega, const PhysicalParams& params, int n, int nodes) {
  const auto mu = mu_spectrum(build_bs_operator(profile, omega, params, nodes), n);
  return static_cast<int>(mu.size()) >= n ? mu[n - 1] : 0.0;
}

} // namespace

DensityProfile DensityProfile::square(int d, double rho0, double R, double center) {
  DensityProfile p;
  p.kind = ProfileKind::square;
  p.d = d;
  p.rho0 = rho0;
  p.R = R;
  p.center = center;
  p.validate();
  return p;
}

DensityProfile DensityProfile::inclusion(const PhysicalParams& params) {
  params.validate();
  DensityProfile p;
  p.kind = ProfileKind::inclusion;
  p.d = params.d;
  p.rho0 = params.rho0();
  p.R = params.epsilon;
  p.validate();
  return p;
}

void DensityProfile::validate() const {
  if (d < 1 || d > 3) throw DomainError("density profile: d must be 1, 2 or 3");
  if (!(rho0 > 0.0) || !std::isfinite(rho0)) throw DomainError("density profile: rho0 must be positive and finite");
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("density profile: R must be positive and finite");
  if (d > 1 && center != 0.0) throw DomainError("density profile: offset centers are supported in d = 1 only");
}

double DensityProfile::support_measure() const {
  if (kind == ProfileKind::square) return std::pow(2.0 * R, d);
  return nystrom::unit_ball_volume(d) * std::pow(R, d);
}

double DensityProfile::integral_power(double p) const { return std::pow(rho0, p) * support_measure(); }

double DensityProfile::ball_radius() const {
  if (kind == ProfileKind::inclusion || d == 1) return R;
  return std::pow(support_measure() / nystrom::unit_ball_volume(d), 1.0 / d);
}

bool DensityProfile::contains(double x) const { return std::abs(x - center) <= R; }

BSOperator build_bs_operator(const DensityProfile& profile, double omega, const PhysicalParams& params, int n_nodes) {
  profile.validate();
  if (!(omega < 0.0)) throw DomainError("build_bs_operator: omega must be negative");
  if (!(params.c > 0.0) || !(params.g > 0.0)) throw DomainError("build_bs_operator: c and g must be positive");
  const auto k = greens::WaveNumber::negative(omega / params.c);
  const double coef = coupling(params, omega, profile.rho0);
  BSOperator op;
  op.omega = omega;
  op.profile = profile;
  Eigen::MatrixXd w;
  if (profile.d == 1) {
    const int order = nystrom::panel_order;
    if (n_nodes < 2 * order || n_nodes % (2 * order) != 0) {
      throw DomainError("build_bs_operator: d = 1 node count must be a multiple of 32");
    }
    const double a = profile.center - profile.R, b = profile.center + profile.R;
    const auto grid = quad::make_grid(quad::graded_breaks(a, b, n_nodes / order, nystrom::panel_grading, true, true), order);
    w.resize(n_nodes, n_nodes);
    parallel_for(n_nodes, [&](int i) {
      const double x = grid.nodes[i];
      const auto q = quad::product_weights(grid, [&](double y) { return cd(green1(k, std::abs(x - y))); }, {x});
      for (int j = 0; j < n_nodes; ++j) w(i, j) = q[j].real();
    });
    op.nodes = grid.nodes;
    op.weights = grid.weights;
  } else {
    const double radius = profile.ball_radius();
    const auto rule = nystrom::make_rule(profile.d, n_nodes);
    w = nystrom::kernel_matrix(rule, k, radius).real();
    for (int j = 0; j < rule.size(); ++j) {
      op.nodes.push_back(radius * rule.grid.nodes[j]);
      op.weights.push_back(std::pow(radius, profile.d) * rule.volume[j]);
    }
  }
  if (!w.allFinite()) throw DomainError("build_bs_operator: non-finite kernel weights");
  op.matrix = coef * symmetric_part(w, op.weights);
  return op;
}

std::vector<double> mu_spectrum(const BSOperator& k, int m) {
  if (m < 1) throw DomainError("mu_spectrum: count must be positive");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k.matrix, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceError("mu_spectrum: eigensolver failed");
  std::vector<double> mu(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(mu.rbegin(), mu.rend());
  mu.resize(std::min<std::size_t>(mu.size(), m));
  return mu;
}

int count_bound_states_below(const DensityProfile& profile, double omega, const PhysicalParams& params, int n_nodes) {
  const auto op = build_bs_operator(profile, omega, params, n_nodes);
  const auto mu = mu_spectrum(op, op.matrix.rows());
  return static_cast<int>(std::count_if(mu.begin(), mu.end(), [](double v) { return v >= 1.0; }));
}

BoundStateResult solve_bound_state(const DensityProfile& profile, const PhysicalParams& params, int n, int n_nodes,
                                   double tol) {
  if (n < 1) throw DomainError("solve_bound_state: mode index must be >= 1");
  BoundStateResult res;
  const auto f = [&](double omega) {
    ++res.evaluations;
    return mu_n(profile, omega, params, n, n_nodes) - 1.0;
  };
  // mu_n grows toward omega -> 0^-, only logarithmically in d = 1, so first
  // walk toward zero until mu_n >= 1, then scan away from zero
  int j_hi = -20;
  double hi = -params.c * std::ldexp(1.0, j_hi);
  double f_hi = f(hi);
  while (f_hi < 0.0 && j_hi > -200) {
    j_hi -= 20;
    hi = -params.c * std::ldexp(1.0, j_hi);
    f_hi = f(hi);
  }
  if (f_hi < 0.0) {
    std::ostringstream msg;
    msg << "no bound state detected for mode " << n << " (mu_" << n << " = " << f_hi + 1.0 << " < 1 at omega = " << hi
        << ")";
    res.message = msg.str();
    return res;
  }
  double lo = hi, f_lo = f_hi;
  for (int j = j_hi + 1; j <= 10 && f_lo >= 0.0; ++j) {
    hi = lo;
    f_hi = f_lo;
    lo = -params.c * std::ldexp(1.0, j);
    f_lo = f(lo);
  }
  if (f_lo >= 0.0) {
    res.message = "no bound state detected for mode " + std::to_string(n) + ": mu_n >= 1 across the whole scan";
    return res;
  }
  // f(lo) < 0 <= f(hi), lo < hi < 0
  double mid = hi, f_mid = f_hi;
  for (int it = 0; it < 200; ++it) {
    if (std::abs(f_mid) <= tol) break;
    mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    f_mid = f(mid);
    if (f_mid < 0.0) lo = mid;
    else hi = mid;
  }
  res.omega = mid;
  res.mu = f_mid + 1.0;
  res.found = std::abs(f_mid) <= tol;
  if (!res.found) {
    std::ostringstream msg;
    msg << "bisection stalled with |mu - 1| = " << std::abs(f_mid);
    res.message = msg.str();
  }
  return res;
}

bool necessary_condition(const DensityProfile& profile, const PhysicalParams& params, double omega) {
  return params.g * params.g * profile.sup_norm() >= omega * (omega - params.Omega);
}

double sobolev_threshold(int d) {
  if (d < 2) throw DomainError("sobolev_threshold: d must be >= 2");
  const double sphere = 2.0 * std::pow(pi, 0.5 * (d + 1)) / std::tgamma(0.5 * (d + 1));
  return 0.5 * (d - 1) * std::pow(sphere, 1.0 / d);
}

namespace {

double square_ratio(const DensityProfile& profile, const PhysicalParams& params) {
  if (profile.kind != ProfileKind::square || profile.d < 2) {
    throw DomainError("square-density conditions need a square profile with d >= 2");
  }
  return 2.0 * params.g * params.g * profile.rho0 * profile.R / (params.Omega * params.c);
}

} // namespace

bool no_bound_state_condition(const DensityProfile& profile, const PhysicalParams& params) {
  return square_ratio(profile, params) < sobolev_threshold(profile.d);
}

bool sufficient_condition(const DensityProfile& profile, const PhysicalParams& params, double K) {
  if (!(K > 0.0)) throw DomainError("sufficient_condition: K must be positive");
  return square_ratio(profile, params) > K * pi;
}

bool sufficient_condition_at(const DensityProfile& profile, const PhysicalParams& params, double K, double omega) {
  square_ratio(profile, params);
  if (!(K > 0.0)) throw DomainError("sufficient_condition_at: K must be positive");
  if (!(omega < 0.0)) throw DomainError("sufficient_condition_at: omega must be negative");
  const double c_tilde = std::sqrt(static_cast<double>(profile.d)) * params.c;
  const double w = std::abs(omega);
  return params.g * params.g * profile.rho0 >= K * (params.Omega + w) * (pi * c_tilde / (2.0 * profile.R) + w);
}

double nbs_upper_bound(const DensityProfile& profile, const PhysicalParams& params, double K_d) {
  if (profile.d < 2) throw DomainError("nbs_upper_bound: d must be >= 2");
  if (!(K_d > 0.0)) throw DomainError("nbs_upper_bound: K_d must be positive");
  return K_d * std::pow(params.g * params.g / (params.Omega * params.c), profile.d) * profile.integral_power(profile.d);
}

} // namespace photon::bound
