#pragma once

// Small-eps expansions of the resonances and bound states of a high-contrast
// inclusion, built from the discretized limiting problem L_0 psi = (Omega - omega) psi.

#include "photon/nystrom.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace photon::asym {

using cd = std::complex<double>;
using nystrom::PhysicalParams;
using nystrom::QuadratureRule;

struct LimitingMode {
  int j = 0;  // 0-based, by decreasing mu_j
  double omega_j = 0.0;
  Eigen::VectorXd psi;  // samples at the radial nodes, sum_j vol_j psi_j^2 = 1
  double mass = 0.0;    // int_{B_1} psi >= 0
  double a1_quad = 0.0; // <psi, A_1 psi> (real part in d = 2)
};

// Top-n modes of the discretized L_0 (d = 2, 3).
std::vector<LimitingMode> limiting_modes(const PhysicalParams& params, int n, const QuadratureRule& rule);
std::vector<LimitingMode> limiting_modes(const PhysicalParams& params, int n,
                                         int n_radial = nystrom::default_radial_nodes);

// <psi, A_1^{omega} psi> with the first-order kernel
//   d = 3: A_1(x) = k / (4 pi |x|)
//   d = 2: A_1(x) = -(k / 2 pi)(log(k |x| / 2) + gamma) + i k / 2
// and A_1 = -(g^2 s0 / c) int A_1(x - y) . dy, k = omega / c.
cd a1_inner(const PhysicalParams& params, double omega, const Eigen::VectorXd& psi, const QuadratureRule& rule);

// omega_j + eps a1 - i eps^2 omega_j^2 g^2 s0 mass^2 / (2 pi c^3)
cd resonance_expansion_3d(const LimitingMode& mode, const PhysicalParams& params, double eps);

// omega_j + eps log(eps) omega_j g^2 s0 mass^2 / (2 pi c^2) - i eps omega_j g^2 s0 mass^2 / (2 c^2);
// include_order_eps adds eps a1_quad to the real part.
cd resonance_expansion_2d(const LimitingMode& mode, const PhysicalParams& params, double eps,
                          bool include_order_eps = false);

// Omega - g^2 s0 |B_1| / (pi c) + i g^2 s0 |B_1| / (c log eps); needs that real part > 0.
cd resonance_expansion_1d(const PhysicalParams& params, double eps);

// alpha = 2 g^2 s0 / (pi c)
double sphere_alpha(const PhysicalParams& params);

// Omega - alpha - eps (Omega - alpha)/c - i eps^2 alpha pi (Omega - alpha)^2 / (3 c^2)
cd sphere_lowest_mode_approx(const PhysicalParams& params, double eps);

// p = Omega pi c / (g^2 s0 |B_1|) - 1 > 0, omega(eps) ~ -c eps^p.
double bound_state_exponent_1d(const PhysicalParams& params);

} // namespace photon::asym
