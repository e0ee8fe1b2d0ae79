#include "photon/dynamics.hpp"

#include "photon/error.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

namespace photon::dyn {

namespace {

// fftw planning is not thread-safe
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

struct Fft {
  int n;
  fftw_complex* buf;
  fftw_plan forward;
  fftw_plan backward;

  explicit Fft(int size) : n(size) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    buf = fftw_alloc_complex(n);
    forward = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(buf);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  // v <- ifft(m .* fft(v))
  void multiply(std::vector<cd>& v, const std::vector<cd>& m) {
    auto* b = reinterpret_cast<cd*>(buf);
    std::copy(v.begin(), v.end(), b);
    fftw_execute(forward);
    const double scale = 1.0 / n;
    for (int j = 0; j < n; ++j) b[j] *= m[j] * scale;
    fftw_execute(backward);
    std::copy(b, b + n, v.begin());
  }
};

double sum_norm(const std::vector<cd>& v) {
  double s = 0.0;
  for (const cd& z : v) s += std::norm(z);
  return s;
}

} // namespace

double Grid1D::wavenumber(int j) const {
  const int m = j <= N / 2 ? j : N - j;
  return 2.0 * std::numbers::pi * m / L;
}

void Grid1D::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("grid: L must be positive");
  if (N < 2 || (N & (N - 1)) != 0) throw DomainError("grid: N must be a power of two");
}

std::vector<double> square_density(const Grid1D& grid, double rho0, double R, double center) {
  grid.validate();
  if (!(rho0 > 0.0) || !(R > 0.0)) throw DomainError("square_density: rho0 and R must be positive");
  std::vector<double> rho(grid.N, 0.0);
  for (int j = 0; j < grid.N; ++j) {
    if (std::abs(grid.x(j) - center) <= R) rho[j] = rho0;
  }
  return rho;
}

std::vector<cd> half_laplacian_apply(const std::vector<cd>& psi, const Grid1D& grid) {
  grid.validate();
  if (static_cast<int>(psi.size()) != grid.N) throw DomainError("half_laplacian_apply: size mismatch");
  std::vector<cd> m(grid.N);
  for (int j = 0; j < grid.N; ++j) m[j] = grid.wavenumber(j);
  Fft fft(grid.N);
  auto out = psi;
  fft.multiply(out, m);
  return out;
}

double mass(const FieldState& s) { return (sum_norm(s.psi) + sum_norm(s.phi)) * s.grid.dx(); }

double window_mass(const FieldState& s, double a, double b) {
  double m = 0.0;
  for (int j = 0; j < s.grid.N; ++j) {
    const double x = s.grid.x(j);
    if (x >= a && x <= b) m += std::norm(s.psi[j]) + std::norm(s.phi[j]);
  }
  return m * s.grid.dx();
}

double survival_probability(const FieldState& s0, const FieldState& s) {
  if (s0.psi.size() != s.psi.size()) throw DomainError("survival_probability: grid mismatch");
  cd inner = 0.0;
  for (std::size_t j = 0; j < s.psi.size(); ++j) inner += std::conj(s0.psi[j]) * s.psi[j] + std::conj(s0.phi[j]) * s.phi[j];
  inner *= s0.grid.dx();
  return std::norm(inner) / (mass(s0) * mass(s));
}

struct Evolver::Impl {
  Grid1D grid;
  DynamicsParams params;
  Fft fft;
  double free_tau = -1.0;
  double coupling_tau = -1.0;
  std::vector<cd> free_multiplier;
  std::vector<cd> u11, u12, u22;

  Impl(const Grid1D& g, DynamicsParams p) : grid(g), params(std::move(p)), fft(g.N) {}

  void prepare_free(double tau) {
    if (tau == free_tau) return;
    free_tau = tau;
    free_multiplier.resize(grid.N);
    for (int j = 0; j < grid.N; ++j) free_multiplier[j] = std::exp(cd(0.0, -params.c * grid.wavenumber(j) * tau));
  }

  // exp(-i H tau) = e^{-i Omega tau/2} (cos(r tau) - i sin(r tau)/r [[-Omega/2, b], [b, Omega/2]])
  void prepare_coupling(double tau) {
    if (tau == coupling_tau) return;
    coupling_tau = tau;
    const int n = grid.N;
    u11.resize(n);
    u12.resize(n);
    u22.resize(n);
    const double half_omega = 0.5 * params.Omega;
    const cd phase = std::exp(cd(0.0, -half_omega * tau));
    for (int j = 0; j < n; ++j) {
      const double b = params.g * std::sqrt(params.rho[j]);
      const double r = std::hypot(half_omega, b);
      const double cr = std::cos(r * tau);
      const double sr = r > 0.0 ? std::sin(r * tau) / r : tau;
      u11[j] = phase * cd(cr, half_omega * sr);
      u22[j] = phase * cd(cr, -half_omega * sr);
      u12[j] = phase * cd(0.0, -b * sr);
    }
  }
};

Evolver::Evolver(const Grid1D& grid, DynamicsParams params) {
  grid.validate();
  if (static_cast<int>(params.rho.size()) != grid.N) throw DomainError("Evolver: density size mismatch");
  for (double r : params.rho) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("Evolver: density must be nonnegative and finite");
  }
  if (!(params.c > 0.0)) throw DomainError("Evolver: c must be positive");
  impl_ = std::make_unique<Impl>(grid, std::move(params));
}

Evolver::~Evolver() = default;

void Evolver::free_flow(FieldState& s, double tau) {
  auto& im = *impl_;
  im.prepare_free(tau);
  im.fft.multiply(s.psi, im.free_multiplier);
}

void Evolver::coupling_flow(FieldState& s, double tau) {
  auto& im = *impl_;
  im.prepare_coupling(tau);
  for (int j = 0; j < im.grid.N; ++j) {
    const cd p = s.psi[j], f = s.phi[j];
    s.psi[j] = im.u11[j] * p + im.u12[j] * f;
    s.phi[j] = im.u12[j] * p + im.u22[j] * f;
  }
}

void Evolver::step(FieldState& s, double dt) {
  if (!(dt > 0.0)) throw DomainError("evolve: dt must be positive");
  free_flow(s, 0.5 * dt);
  coupling_flow(s, dt);
  free_flow(s, 0.5 * dt);
  s.t += dt;
}

FieldState Evolver::evolve(FieldState s, double dt, int steps, const std::function<void(const FieldState&)>& observer,
                           double max_drift) {
  if (steps < 0) throw DomainError("evolve: steps must be nonnegative");
  if (static_cast<int>(s.psi.size()) != impl_->grid.N || static_cast<int>(s.phi.size()) != impl_->grid.N) {
    throw DomainError("evolve: state size mismatch");
  }
  const double m0 = mass(s);
  for (int i = 0; i < steps; ++i) {
    step(s, dt);
    if (observer) observer(s);
    const double drift = std::abs(mass(s) - m0) / m0;
    if (!(drift <= max_drift)) {
      std::ostringstream msg;
      msg << "mass drift " << drift << " exceeds " << max_drift << " at step " << i + 1 << ", t = " << s.t;
      throw ConvergenceError(msg.str());
    }
  }
  return s;
}

FieldState evolve(const FieldState& state, double dt, int steps, const DynamicsParams& params) {
  Evolver ev(state.grid, params);
  return ev.evolve(state, dt, steps);
}

} // namespace photon::dyn
