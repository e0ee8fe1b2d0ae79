#pragma once

// Nonlinear eigenproblem M(omega) psi = 0 for the full operator. The scalar
// characteristic function is the smallest-magnitude eigenvalue of M(omega),
// driven to zero by Muller's method from seeds at the limiting frequencies
// omega_j = Omega - mu_j.

#include "photon/nystrom.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace photon::eigen {

using cd = std::complex<double>;
using nystrom::PhysicalParams;
using nystrom::QuadratureRule;
using nystrom::RadialOperator;

struct EigenPair {
  cd value;
  Eigen::VectorXcd vector;
};

// Smallest-magnitude eigenvalue of m and its eigenvector (unit 2-norm).
EigenPair smallest_eigenpair(const Eigen::MatrixXcd& m);
cd characteristic_value(const Eigen::MatrixXcd& m);
cd characteristic_value(const RadialOperator& op);

struct MullerOptions {
  double tol = 1e-10;
  int max_iter = 50;
  std::vector<cd> exclude;        // previously found roots
  double exclude_radius = 1e-8;   // relative to |root|
};

struct MullerResult {
  cd root;
  cd value;
  int iterations = 0;
  bool converged = false;
};

// Non-convergence returns the best iterate with converged = false.
MullerResult muller_solve(const std::function<cd(cd)>& f, std::array<cd, 3> seeds, const MullerOptions& opt = {});

struct SpectrumResult {
  cd omega;
  Eigen::VectorXcd eigenvector;  // samples of psi at the radial nodes, ||v||_w = 1
  double residual = 0.0;         // ||M(omega) v|| / ||v||
  int iterations = 0;
  cd seed;
  int mode = 0;
  bool converged = false;
  std::string message;
};

struct SolverOptions {
  int n_radial = nystrom::default_radial_nodes;
  int angular_factor = 4;
  double tol = 1e-10;
  int max_iter = 50;
  int threads = 1;
};

// mu_j of the discretized L_0 in decreasing order (d = 2, 3); for d = 1 the
// single nonzero eigenvalue 2 g^2 s0 / (pi c).
std::vector<double> limiting_spectrum(const PhysicalParams& params, const QuadratureRule& rule, int count);

// Seeds omega_j (1, 1 - 1e-3, 1 - 1e-3 i).
std::array<cd, 3> seeds_around(cd omega_j);

// Converges the full problem from the given seeds; the returned eigenvector
// is normalized in the quadrature-weighted norm.
SpectrumResult solve_mode(const PhysicalParams& params, const QuadratureRule& rule, std::array<cd, 3> seeds,
                          const SolverOptions& opt, const std::vector<cd>& exclude = {});

std::vector<SpectrumResult> find_resonances(const PhysicalParams& params, int n_modes, const SolverOptions& opt = {});

struct ResonanceTrace {
  int mode = 0;
  std::vector<double> epsilon;
  std::vector<SpectrumResult> results;
  std::vector<bool> continuity_break;
  double continuity_tol = 0.1;  // relative jump allowed between consecutive epsilons
};

// Mode j (0-based, by decreasing mu_j) followed along a strictly decreasing
// epsilon list, warm-starting each step from the previous root.
ResonanceTrace trace_in_epsilon(const PhysicalParams& params, int mode, const std::vector<double>& epsilons,
                                const SolverOptions& opt = {}, double continuity_tol = 0.1);

double weighted_norm(const Eigen::VectorXcd& v, const QuadratureRule& rule);

} // namespace photon::eigen
