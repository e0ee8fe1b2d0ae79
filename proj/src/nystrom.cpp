#include "photon/nystrom.hpp"

#include "photon/error.hpp"
#include "photon/parallel.hpp"
#include "photon/specfun.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace photon::nystrom {

namespace {

using greens::Branch;
using greens::WaveNumber;
using specfun::pi;

// Below this argument G1 is continued by its logarithmic leading term; the
// dropped O(k u) contribution is integrated over a region of length ~u/scale.
constexpr double tiny_argument = 1e-9;

cd green1(const WaveNumber& k, double u) {
  if (u >= tiny_argument) return greens::green(1, k, u);
  return greens::green(1, k, tiny_argument) - std::log(u / tiny_argument) / pi;
}

// Complete elliptic integrals K and E of modulus kappa, from the
// complementary modulus kp = sqrt(1 - kappa^2) and kappa^2 given separately so
// that kappa -> 1 keeps full relative accuracy in kp.
struct Elliptic {
  double K;
  double E;
};

Elliptic elliptic(double kappa2, double kp) {
  if (kp == 0.0) return {INFINITY, 1.0};
  double a = 1.0, b = kp;
  double c2sum = 0.5 * kappa2;  // 2^{-1} c_0^2
  double pow2 = 0.5;
  for (int n = 0; n < 60; ++n) {
    const double c = 0.5 * (a - b);
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    c2sum += pow2 * c * c;
    if (std::abs(c) < 1e-17 * a) break;
  }
  const double K = pi / (2.0 * a);
  return {K, K * (1.0 - c2sum)};
}

// Closed-form circle averages over theta in [0, 2 pi) of 1/s, log s and s,
// s = |r - r' e^{i theta}|.
struct CircleIntegrals {
  double inv_s;
  double log_s;
  double s;
};

CircleIntegrals circle_integrals(double r, double rp) {
  const double sum = r + rp;
  const double kp = std::abs(r - rp) / sum;
  const double kappa2 = 4.0 * r * rp / (sum * sum);
  const auto e = elliptic(kappa2, kp);
  return {4.0 * e.K / sum, 2.0 * pi * std::log(std::max(r, rp)), 4.0 * sum * e.E};
}

// G2(u) = 1/(2 pi u) - (k / 2 pi) log u + c1 u + bounded remainder
struct Log2D {
  cd log_coeff;
  cd lin_coeff;
};

Log2D log_terms_2d(const WaveNumber& k) {
  if (k.branch == Branch::zero) return {0.0, 0.0};
  return {-k.k / (2.0 * pi), -k.k * k.k / (2.0 * pi)};
}

cd remainder_2d(const WaveNumber& k, double u) {
  const auto t = log_terms_2d(k);
  return greens::green_regular_2d(k, u) - t.log_coeff * std::log(u) - t.lin_coeff * u;
}

// Offset trapezoidal rule on the circle for the bounded remainder, using the
// symmetry theta -> 2 pi - theta.
cd remainder_circle_2d(const WaveNumber& k, double r, double rp, double scale, int m) {
  if (k.branch == Branch::zero) return 0.0;
  cd sum = 0.0;
  const int half = m / 2;
  for (int j = 0; j < half; ++j) {
    const double theta = (j + 0.5) * 2.0 * pi / m;
    const double s = std::sqrt(std::max(0.0, (r - rp) * (r - rp) + 4.0 * r * rp * std::pow(std::sin(0.5 * theta), 2)));
    sum += remainder_2d(k, std::max(scale * s, 1e-12));
  }
  return sum * (4.0 * pi / m);
}

// Closed-form part of int_0^{2 pi} G2(scale s) dtheta.
cd closed_circle_2d(const WaveNumber& k, double r, double rp, double scale) {
  const auto c = circle_integrals(r, rp);
  const auto t = log_terms_2d(k);
  return c.inv_s / (2.0 * pi * scale) + t.log_coeff * (2.0 * pi * std::log(scale) + c.log_s) +
         t.lin_coeff * scale * c.s;
}

void check_finite(const Eigen::MatrixXcd& w, const QuadratureRule& rule) {
  for (int j = 0; j < w.cols(); ++j) {
    for (int i = 0; i < w.rows(); ++i) {
      const cd v = w(i, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream msg;
        msg << "non-finite kernel weight at nodes (" << i << ", " << j << "), r = " << rule.grid.nodes[i]
            << ", r' = " << rule.grid.nodes[j];
        throw DomainError(msg.str());
      }
    }
  }
}

} // namespace

double PhysicalParams::rho0() const {
  if (scaling == DensityScaling::raw) return density;
  if (d == 1) return -density / (epsilon * std::log(epsilon));
  return density / epsilon;
}

double PhysicalParams::s0() const {
  if (scaling == DensityScaling::scaled) return density;
  if (d == 1) return -density * epsilon * std::log(epsilon);
  return density * epsilon;
}

void PhysicalParams::validate() const {
  std::string why;
  if (d < 1 || d > 3) why = "d must be 1, 2 or 3";
  else if (!(c > 0.0)) why = "c must be positive";
  else if (!(g > 0.0)) why = "g must be positive";
  else if (!std::isfinite(Omega)) why = "Omega must be finite";
  else if (!(epsilon > 0.0)) why = "epsilon must be positive";
  else if (!(density > 0.0)) why = "density must be positive";
  else if (d == 1 && scaling == DensityScaling::scaled && !(epsilon < 1.0)) why = "d = 1 scaling needs epsilon < 1";
  if (!why.empty()) throw DomainError("invalid physical parameters: " + why);
}

double unit_ball_volume(int d) { return d == 1 ? 2.0 : d == 2 ? pi : 4.0 * pi / 3.0; }
double unit_sphere_area(int d) { return d == 1 ? 2.0 : d == 2 ? 2.0 * pi : 4.0 * pi; }

QuadratureRule make_rule(int d, int n_radial, int angular_factor) {
  if (d < 1 || d > 3) throw DomainError("make_rule: d must be 1, 2 or 3");
  QuadratureRule rule;
  rule.d = d;
  rule.grid = quad::radial_grid(n_radial, panel_order, panel_grading);
  rule.angular_nodes = angular_factor * n_radial;
  if (rule.angular_nodes < 8 || rule.angular_nodes % 2 != 0) {
    throw DomainError("make_rule: angular node count must be even and >= 8");
  }
  rule.volume.resize(n_radial);
  for (int j = 0; j < n_radial; ++j) {
    rule.volume[j] = unit_sphere_area(d) * std::pow(rule.grid.nodes[j], d - 1) * rule.grid.weights[j];
  }
  return rule;
}

greens::WaveNumber wave_number(cd omega, double c) {
  const cd k = omega / c;
  if (k == 0.0) return WaveNumber::zero();
  if (k.real() == 0.0) throw DomainError("frequency on the imaginary axis");
  return WaveNumber::physical(k);
}

cd reduced_kernel(int d, const WaveNumber& k, double r, double rp, const QuadratureRule& rule) {
  if (!(r > 0.0) || !(rp > 0.0)) throw DomainError("reduced_kernel: radii must be positive");
  cd value;
  if (d == 1) {
    value = green1(k, std::abs(r - rp)) + green1(k, r + rp);
  } else if (d == 3) {
    value = (green1(k, std::abs(r - rp)) - green1(k, r + rp)) / (r * rp);
  } else {
    value = closed_circle_2d(k, r, rp, 1.0) + remainder_circle_2d(k, r, rp, 1.0, rule.angular_nodes);
  }
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    std::ostringstream msg;
    msg << "reduced_kernel: non-finite value at r = " << r << ", r' = " << rp;
    throw DomainError(msg.str());
  }
  return value;
}

Eigen::MatrixXcd profile_matrix(const QuadratureRule& rule, const std::function<cd(double)>& profile,
                                double scale) {
  if (rule.d == 2) throw DomainError("profile_matrix: only d = 1 and d = 3 have one-dimensional profiles");
  const int n = rule.size();
  Eigen::MatrixXcd w(n, n);
  parallel_for(n, [&](int i) {
    const double x = rule.grid.nodes[i];
    std::function<cd(double)> row;
    if (rule.d == 1) {
      row = [&](double y) { return scale * (profile(scale * std::abs(x - y)) + profile(scale * (x + y))); };
    } else {
      row = [&](double y) { return (scale / x) * (profile(scale * std::abs(x - y)) - profile(scale * (x + y))) * y; };
    }
    const auto q = quad::product_weights(rule.grid, row, {x, -x});
    for (int j = 0; j < n; ++j) w(i, j) = q[j];
  });
  check_finite(w, rule);
  return w;
}

Eigen::MatrixXcd kernel_matrix(const QuadratureRule& rule, const WaveNumber& k, double scale) {
  greens::validate(k);
  if (!(scale > 0.0)) throw DomainError("kernel_matrix: scale must be positive");
  if (rule.d != 2) return profile_matrix(rule, [&](double u) { return green1(k, u); }, scale);

  const int n = rule.size();
  const double s2 = scale * scale;
  Eigen::MatrixXcd w(n, n);
  parallel_for(n, [&](int i) {
    const double x = rule.grid.nodes[i];
    const auto row = [&](double y) { return s2 * y * closed_circle_2d(k, x, y, scale); };
    const auto q = quad::product_weights(rule.grid, row, {x, -x});
    for (int j = 0; j < n; ++j) {
      const double y = rule.grid.nodes[j];
      w(i, j) = q[j] + s2 * y * rule.grid.weights[j] * remainder_circle_2d(k, x, y, scale, rule.angular_nodes);
    }
  });
  check_finite(w, rule);
  return w;
}

RadialOperator build_full_operator(const PhysicalParams& params, cd omega, const QuadratureRule& rule) {
  params.validate();
  if (rule.d != params.d) throw DomainError("build_full_operator: rule dimension mismatch");
  const auto k = wave_number(omega, params.c);
  const double coupling = params.g * params.g * params.rho0() / params.c;
  RadialOperator op;
  op.matrix = -coupling * kernel_matrix(rule, k, params.epsilon);
  op.matrix.diagonal().array() -= (omega - params.Omega);
  op.rule = rule;
  op.omega = omega;
  op.params = params;
  op.kind = OperatorKind::full;
  return op;
}

RadialOperator build_kernel_operator(const PhysicalParams& params, const QuadratureRule& rule) {
  params.validate();
  if (params.d == 1) throw DomainError("the limiting operator in d = 1 is the rank-one form");
  if (rule.d != params.d) throw DomainError("build_kernel_operator: rule dimension mismatch");
  RadialOperator op;
  op.matrix = (params.g * params.g * params.s0() / params.c) * kernel_matrix(rule, WaveNumber::zero(), 1.0);
  op.rule = rule;
  op.omega = 0.0;
  op.params = params;
  op.kind = OperatorKind::kernel_only;
  return op;
}

RadialOperator build_limiting_operator(const PhysicalParams& params, cd omega, const QuadratureRule& rule) {
  auto op = build_kernel_operator(params, rule);
  op.matrix = -op.matrix;
  op.matrix.diagonal().array() -= (omega - params.Omega);
  op.omega = omega;
  op.kind = OperatorKind::limiting;
  return op;
}

RadialOperator build_rank1_limit_1d(const PhysicalParams& params, cd omega, const QuadratureRule& rule) {
  params.validate();
  if (params.d != 1 || rule.d != 1) throw DomainError("build_rank1_limit_1d: requires d = 1");
  const int n = rule.size();
  const double coupling = params.g * params.g * params.s0() / (pi * params.c);
  RadialOperator op;
  op.matrix.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) op.matrix(i, j) = -coupling * rule.volume[j];
  }
  op.matrix.diagonal().array() -= (omega - params.Omega);
  op.rule = rule;
  op.omega = omega;
  op.params = params;
  op.kind = OperatorKind::limiting;
  return op;
}

Eigen::MatrixXcd symmetrize(const Eigen::MatrixXcd& w, const QuadratureRule& rule) {
  const int n = rule.size();
  Eigen::VectorXd sq(n);
  for (int j = 0; j < n; ++j) sq[j] = std::sqrt(rule.volume[j]);
  return sq.asDiagonal() * w * sq.cwiseInverse().asDiagonal();
}

} // namespace photon::nystrom
