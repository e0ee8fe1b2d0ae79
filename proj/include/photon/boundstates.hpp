#pragma once

// Birman-Schwinger operator K_omega[rho] for omega < 0 and the bound-state
// conditions built on it. A bound state at omega < 0 corresponds to an
// eigenvalue 1 of K_omega; the eigenvalues mu_n(omega) decrease in omega.
//
// d = 1 uses the full support interval (all parities). For d = 2, 3 the
// operator is restricted to radially symmetric functions on a ball; a square
// [-R, R]^d is replaced by the ball of equal volume, so counts there refer to
// radially symmetric states.

#include "photon/nystrom.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace photon::bound {

using cd = std::complex<double>;
using nystrom::PhysicalParams;

enum class ProfileKind { square, inclusion };

struct DensityProfile {
  ProfileKind kind = ProfileKind::square;
  int d = 1;
  double rho0 = 1.0;
  double R = 1.0;       // half-width of the square, or inclusion radius eps
  double center = 0.0;  // d = 1 only

  static DensityProfile square(int d, double rho0, double R, double center = 0.0);
  // rho0(eps) chi_{B_eps} from the inclusion parameters
  static DensityProfile inclusion(const PhysicalParams& params);

  void validate() const;
  double sup_norm() const { return rho0; }
  double support_measure() const;     // |supp rho|
  double integral_power(double p) const;  // int rho^p
  double ball_radius() const;          // radius of the ball used for d = 2, 3
  bool contains(double x) const;       // d = 1
};

struct BSOperator {
  Eigen::MatrixXd matrix;  // symmetric
  double omega = 0.0;
  DensityProfile profile;
  std::vector<double> nodes;    // 1D positions or radii
  std::vector<double> weights;  // quadrature measure (volume weights for d = 2, 3)
};

inline constexpr int default_bs_nodes = 64;

BSOperator build_bs_operator(const DensityProfile& profile, double omega, const PhysicalParams& params,
                             int n_nodes = default_bs_nodes);

// m largest eigenvalues, decreasing.
std::vector<double> mu_spectrum(const BSOperator& k, int m);

int count_bound_states_below(const DensityProfile& profile, double omega, const PhysicalParams& params,
                             int n_nodes = default_bs_nodes);

struct BoundStateResult {
  bool found = false;
  double omega = 0.0;
  double mu = 0.0;  // mu_n(omega)
  int evaluations = 0;
  std::string message;
};

// omega* with mu_n(omega*) = 1 (n = 1 is the top eigenvalue). Starts at
// omega = -c 2^-20, moves toward zero (down to -c 2^-200) until mu_n >= 1,
// scans outward over omega = -c 2^j up to j = 10, then bisects.
BoundStateResult solve_bound_state(const DensityProfile& profile, const PhysicalParams& params, int n = 1,
                                   int n_nodes = default_bs_nodes, double tol = 1e-10);

// g^2 ||rho||_inf >= omega (omega - Omega), necessary for a bound state at omega.
bool necessary_condition(const DensityProfile& profile, const PhysicalParams& params, double omega);

// (d - 1)/2 |S^d|^{1/d}, |S^d| the surface measure of the unit sphere in R^{d+1}.
double sobolev_threshold(int d);

// 2 g^2 rho0 R / (Omega c) < S_d: no negative-frequency bound states (square, d >= 2).
bool no_bound_state_condition(const DensityProfile& profile, const PhysicalParams& params);

// 2 g^2 rho0 R / (Omega c) > K pi with a user-supplied K (square, d >= 2).
bool sufficient_condition(const DensityProfile& profile, const PhysicalParams& params, double K);

// g^2 rho0 >= K (Omega + |omega|)(pi c~/(2R) + |omega|), c~ = sqrt(d) c.
bool sufficient_condition_at(const DensityProfile& profile, const PhysicalParams& params, double K, double omega);

// K_d (g^2 / (Omega c))^d int rho^d with a user-supplied K_d (not derived here).
double nbs_upper_bound(const DensityProfile& profile, const PhysicalParams& params, double K_d);

} // namespace photon::bound
