#pragma once

// Nystrom discretization of the coupled photon/atom operator on radially
// symmetric functions over the unit interval (d = 1, even functions), disk
// (d = 2) or ball (d = 3). Unknowns are the values psi(r_j) at the radial
// quadrature nodes of B_1; the physical inclusion is B_eps = eps B_1.
//
// Angular reduction:
//   d = 1  G(|x-y|) + G(x+y) on [0, 1].
//   d = 3  exact: the sphere average of G3 is (G1(|r-r'|) - G1(r+r'))/(r r')
//          with the one-dimensional kernel of the same wave number, because
//          s G3(s) = -(1/2pi) d/ds G1(s).
//   d = 2  1/(2 pi s), log s and s parts of G2 integrate in closed form over
//          the circle (complete elliptic integrals and log max(r, r')); the
//          bounded remainder uses the offset trapezoidal rule.
// Radial integrals use product integration on graded Gauss-Legendre panels,
// which resolves the logarithmic singularity at r' = r.

#include "photon/greens.hpp"
#include "photon/quadrature.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace photon::nystrom {

using cd = std::complex<double>;

enum class DensityScaling { raw, scaled };

struct PhysicalParams {
  int d = 3;
  double c = 1.0;
  double g = 1.0;
  double Omega = 1.0;
  double epsilon = 0.1;
  DensityScaling scaling = DensityScaling::scaled;
  double density = 1.0;  // rho_0 when raw, s_0 when scaled

  // rho_0(eps): raw value, s0/eps (d = 2, 3) or -s0/(eps log eps) (d = 1)
  double rho0() const;
  // s_0 such that rho0 = s0/eps (d = 2, 3) or -s0/(eps log eps) (d = 1)
  double s0() const;
  void validate() const;
};

double unit_ball_volume(int d);
double unit_sphere_area(int d);  // |S^{d-1}|, with |S^0| = 2

struct QuadratureRule {
  int d = 3;
  quad::PanelGrid grid;
  int angular_nodes = 0;       // trapezoidal nodes on the circle (d = 2)
  std::vector<double> volume;  // |S^{d-1}| r_j^{d-1} w_j, sums to |B_1|

  int size() const { return grid.size(); }
};

inline constexpr int default_radial_nodes = 64;
inline constexpr int panel_order = 16;
inline constexpr double panel_grading = 0.5;

// angular_nodes = angular_factor * n_radial
QuadratureRule make_rule(int d, int n_radial = default_radial_nodes, int angular_factor = 4);

enum class OperatorKind { full, limiting, kernel_only, birman_schwinger };

struct RadialOperator {
  Eigen::MatrixXcd matrix;
  QuadratureRule rule;
  cd omega;
  PhysicalParams params;
  OperatorKind kind = OperatorKind::full;
};

// Angular average of G^k(|x - y|) over |y| = r' with |x| = r (unscaled lengths).
cd reduced_kernel(int d, const greens::WaveNumber& k, double r, double rp, const QuadratureRule& rule);

// W with (W psi)(r_i) ~ scale^d int_{B_1} G^k(scale |x_i - y|) psi(y) dy.
Eigen::MatrixXcd kernel_matrix(const QuadratureRule& rule, const greens::WaveNumber& k, double scale);

// Same for a kernel whose sphere average follows the d = 1 / d = 3 pattern
// above from the even/odd one-dimensional profile `profile(s)`; used for the
// expansion terms whose three-dimensional kernels have simple 1D profiles.
Eigen::MatrixXcd profile_matrix(const QuadratureRule& rule, const std::function<cd(double)>& profile,
                                double scale);

// M(omega) = -(omega - Omega) I - (g^2 rho0 / c) W(eps, omega / c).
RadialOperator build_full_operator(const PhysicalParams& params, cd omega, const QuadratureRule& rule);

// L_0 = (g^2 s0 / c) W_0 with the k = 0 kernel on the unit domain (d = 2, 3).
RadialOperator build_kernel_operator(const PhysicalParams& params, const QuadratureRule& rule);

// A_0(omega) = -(omega - Omega) I - L_0.
RadialOperator build_limiting_operator(const PhysicalParams& params, cd omega, const QuadratureRule& rule);

// d = 1: -(omega - Omega) I - (g^2 s0 / (pi c)) [vol_j] (rank one).
RadialOperator build_rank1_limit_1d(const PhysicalParams& params, cd omega, const QuadratureRule& rule);

// Wave number and branch used for frequency omega.
greens::WaveNumber wave_number(cd omega, double c);

// D W D^{-1} with D = diag(sqrt(volume)), symmetric for symmetric kernels.
Eigen::MatrixXcd symmetrize(const Eigen::MatrixXcd& w, const QuadratureRule& rule);

} // namespace photon::nystrom
