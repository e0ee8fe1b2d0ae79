#include "photon/asymptotics.hpp"

#include "photon/error.hpp"
#include "photon/quadrature.hpp"
#include "photon/specfun.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace photon::asym {

namespace {

using specfun::pi;

void require_dim(const PhysicalParams& params, int d, const char* what) {
  if (params.d != d) throw DomainError(std::string(what) + ": wrong dimension");
}

double g2s0_over_c(const PhysicalParams& params) { return params.g * params.g * params.s0() / params.c; }

} // namespace

cd a1_inner(const PhysicalParams& params, double omega, const Eigen::VectorXd& psi, const QuadratureRule& rule) {
  if (rule.d != 2 && rule.d != 3) throw DomainError("a1_inner: d must be 2 or 3");
  if (!(omega > 0.0)) throw DomainError("a1_inner: omega must be positive");
  const double k = omega / params.c;
  const int n = rule.size();
  Eigen::VectorXd a_psi(n);
  for (int i = 0; i < n; ++i) {
    const double x = rule.grid.nodes[i];
    // angular integrals of A_1 over |y| = y; both have a kink at y = x
    std::function<cd(double)> row;
    if (rule.d == 3) {
      row = [&](double y) { return cd(k * std::min(x, y) * y / x); };
    } else {
      row = [&](double y) { return cd(-k * y * (std::log(std::max(x, y)) + std::log(0.5 * k) + specfun::euler_gamma)); };
    }
    const auto q = quad::product_weights(rule.grid, row, {x});
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += q[j].real() * psi[j];
    a_psi[i] = s;
  }
  double inner = 0.0, mass = 0.0;
  for (int i = 0; i < n; ++i) {
    inner += rule.volume[i] * psi[i] * a_psi[i];
    mass += rule.volume[i] * psi[i];
  }
  cd value = inner;
  if (rule.d == 2) value += cd(0.0, 0.5 * k) * mass * mass;
  return -g2s0_over_c(params) * value;
}

std::vector<LimitingMode> limiting_modes(const PhysicalParams& params, int n, const QuadratureRule& rule) {
  if (params.d != 2 && params.d != 3) throw DomainError("limiting_modes: d must be 2 or 3");
  if (n < 1) throw DomainError("limiting_modes: n must be positive");
  const auto l0 = nystrom::build_kernel_operator(params, rule);
  Eigen::EigenSolver<Eigen::MatrixXd> es(l0.matrix.real(), true);
  if (es.info() != Eigen::Success) throw ConvergenceError("limiting_modes: eigensolver failed");
  std::vector<int> order(rule.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return es.eigenvalues()[a].real() > es.eigenvalues()[b].real(); });
  std::vector<LimitingMode> modes;
  for (int j = 0; j < std::min(n, rule.size()); ++j) {
    LimitingMode m;
    m.j = j;
    m.omega_j = params.Omega - es.eigenvalues()[order[j]].real();
    m.psi = es.eigenvectors().col(order[j]).real();
    double norm2 = 0.0, mass = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
      norm2 += rule.volume[i] * m.psi[i] * m.psi[i];
      mass += rule.volume[i] * m.psi[i];
    }
    m.psi /= std::sqrt(norm2);
    mass /= std::sqrt(norm2);
    if (mass < 0.0) {
      m.psi = -m.psi;
      mass = -mass;
    }
    m.mass = mass;
    m.a1_quad = m.omega_j > 0.0 ? a1_inner(params, m.omega_j, m.psi, rule).real() : 0.0;
    modes.push_back(std::move(m));
  }
  return modes;
}

std::vector<LimitingMode> limiting_modes(const PhysicalParams& params, int n, int n_radial) {
  return limiting_modes(params, n, nystrom::make_rule(params.d, n_radial));
}

cd resonance_expansion_3d(const LimitingMode& mode, const PhysicalParams& params, double eps) {
  require_dim(params, 3, "resonance_expansion_3d");
  const double w = mode.omega_j;
  const double im = -eps * eps * w * w * g2s0_over_c(params) * mode.mass * mode.mass / (2.0 * pi * params.c * params.c);
  return {w + eps * mode.a1_quad, im};
}

cd resonance_expansion_2d(const LimitingMode& mode, const PhysicalParams& params, double eps, bool include_order_eps) {
  require_dim(params, 2, "resonance_expansion_2d");
  const double w = mode.omega_j;
  const double m2 = mode.mass * mode.mass;
  const double k = g2s0_over_c(params) / params.c;
  double re = w;
  if (eps > 0.0) re += eps * std::log(eps) * w * k * m2 / (2.0 * pi);
  if (include_order_eps) re += eps * mode.a1_quad;
  return {re, -eps * w * k * m2 / 2.0};
}

cd resonance_expansion_1d(const PhysicalParams& params, double eps) {
  require_dim(params, 1, "resonance_expansion_1d");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("resonance_expansion_1d: need 0 < eps < 1");
  const double strength = g2s0_over_c(params) * nystrom::unit_ball_volume(1);
  const double re = params.Omega - strength / pi;
  if (!(re > 0.0)) {
    throw DomainError("resonance_expansion_1d: Omega - g^2 s0 |B_1| / (pi c) <= 0; this is the bound-state regime, "
                      "use bound_state_exponent_1d");
  }
  return {re, strength / std::log(eps)};
}

double sphere_alpha(const PhysicalParams& params) { return 2.0 * g2s0_over_c(params) / pi; }

cd sphere_lowest_mode_approx(const PhysicalParams& params, double eps) {
  require_dim(params, 3, "sphere_lowest_mode_approx");
  const double a = sphere_alpha(params);
  const double gap = params.Omega - a;
  return {gap - eps * gap / params.c, -eps * eps * a * pi * gap * gap / (3.0 * params.c * params.c)};
}

double bound_state_exponent_1d(const PhysicalParams& params) {
  require_dim(params, 1, "bound_state_exponent_1d");
  const double ratio = params.Omega * pi * params.c /
                       (params.g * params.g * params.s0() * nystrom::unit_ball_volume(1));
  if (!(ratio > 1.0)) throw DomainError("bound_state_exponent_1d: needs Omega pi c > g^2 s0 |B_1| (resonance regime otherwise)");
  return ratio - 1.0;
}

} // namespace photon::asym
