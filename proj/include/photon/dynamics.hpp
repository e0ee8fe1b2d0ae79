#pragma once

// One-dimensional evolution of the photon amplitude psi and the atomic
// amplitude phi = sqrt(rho) a on a periodic grid:
//   i psi_t = c |D| psi + g sqrt(rho) phi
//   i phi_t = g sqrt(rho) psi + Omega phi
// Strang splitting: half a step of the exact Fourier flow exp(-i c |k| dt/2)
// on psi, a full step of the exact pointwise 2x2 rotation, half a Fourier step.

#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace photon::dyn {

using cd = std::complex<double>;

struct Grid1D {
  double L = 64.0;  // period; points x_j = -L/2 + j dx
  int N = 4096;     // power of two

  double dx() const { return L / N; }
  double x(int j) const { return -0.5 * L + j * dx(); }
  double wavenumber(int j) const;  // |k_j| in FFT ordering
  void validate() const;
};

struct DynamicsParams {
  double c = 1.0;
  double g = 1.0;
  double Omega = 1.0;
  std::vector<double> rho;  // density samples on the grid
};

// rho0 on [center - R, center + R]
std::vector<double> square_density(const Grid1D& grid, double rho0, double R, double center = 0.0);

struct FieldState {
  Grid1D grid;
  std::vector<cd> psi;
  std::vector<cd> phi;
  double t = 0.0;
};

// |k| psi via FFT
std::vector<cd> half_laplacian_apply(const std::vector<cd>& psi, const Grid1D& grid);

double mass(const FieldState& s);
// int_a^b (|psi|^2 + |phi|^2) dx over grid points in [a, b]
double window_mass(const FieldState& s, double a, double b);
// |<s0, s>|^2 / (M(s0) M(s))
double survival_probability(const FieldState& s0, const FieldState& s);

class Evolver {
 public:
  Evolver(const Grid1D& grid, DynamicsParams params);
  ~Evolver();
  Evolver(const Evolver&) = delete;
  Evolver& operator=(const Evolver&) = delete;

  // One Strang step: free_flow(dt/2), coupling_flow(dt), free_flow(dt/2).
  void step(FieldState& s, double dt);

  // psi <- exp(-i c |D| tau) psi
  void free_flow(FieldState& s, double tau);
  // (psi, phi) <- exp(-i H tau) (psi, phi) pointwise, H = [[0, g sqrt(rho)], [g sqrt(rho), Omega]]
  void coupling_flow(FieldState& s, double tau);

  // `steps` steps; observer(state) after every step if given. Relative mass
  // drift above max_drift throws ConvergenceError.
  FieldState evolve(FieldState s, double dt, int steps,
                    const std::function<void(const FieldState&)>& observer = {}, double max_drift = 1e-6);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

FieldState evolve(const FieldState& state, double dt, int steps, const DynamicsParams& params);

} // namespace photon::dyn
