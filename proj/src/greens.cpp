#include "photon/greens.hpp"

#include "photon/error.hpp"
#include "photon/specfun.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <string>

namespace photon::greens {

namespace {

using specfun::euler_gamma;
using specfun::pi;

const cd I{0.0, 1.0};

constexpr double min_radius = 1e-12;

void check_dimension(int d) {
  if (d < 1 || d > 3) throw DomainError("dimension must be 1, 2 or 3, got " + std::to_string(d));
}

void check_radius(double r) {
  if (!(r >= min_radius) || !std::isfinite(r)) {
    throw DomainError("green: radius must be >= 1e-12, got " + std::to_string(r));
  }
}

// e^{z} E1(z)
cd f(cd z) { return specfun::exp_integral_e1_scaled(z); }

cd green1(cd k, Branch branch, double r) {
  if (branch == Branch::zero) return -(std::log(r) + euler_gamma) / pi;
  const cd z = I * k * r;
  const cd base = (f(z) + f(-z)) / (2.0 * pi);
  switch (branch) {
    case Branch::outgoing: return base + I * std::exp(z);
    case Branch::incoming: return base - I * std::exp(-z);
    default: return base;
  }
}

cd green2_regular(cd k, Branch branch, double r) {
  const cd z = k * r;
  switch (branch) {
    case Branch::zero: return 0.0;
    case Branch::negative: return 0.25 * k * specfun::struve_k0(-z);
    case Branch::outgoing:
      return -0.25 * k * specfun::struve_k0(z) + 0.5 * I * k * specfun::hankel0(z, specfun::HankelKind::first);
    case Branch::incoming:
      return -0.25 * k * specfun::struve_k0(z) - 0.5 * I * k * specfun::hankel0(z, specfun::HankelKind::second);
  }
  return 0.0;
}

cd green2(cd k, Branch branch, double r) { return 1.0 / (2.0 * pi * r) + green2_regular(k, branch, r); }

cd green3(cd k, Branch branch, double r) {
  const double a0 = 1.0 / (2.0 * pi * pi * r * r);
  if (branch == Branch::zero) return a0;
  const cd z = I * k * r;
  const cd base = a0 - I * k / (4.0 * pi * pi * r) * (f(z) - f(-z));
  switch (branch) {
    case Branch::outgoing: return base + k * std::exp(z) / (2.0 * pi * r);
    case Branch::incoming: return base + k * std::exp(-z) / (2.0 * pi * r);
    default: return base;
  }
}

} // namespace

WaveNumber WaveNumber::physical(cd k) {
  if (k == 0.0) return zero();
  return k.real() > 0.0 ? outgoing(k) : negative(k);
}

void validate(const WaveNumber& wn) {
  const cd k = wn.k;
  if (!std::isfinite(k.real()) || !std::isfinite(k.imag())) throw DomainError("non-finite wave number");
  switch (wn.branch) {
    case Branch::zero:
      if (k != 0.0) throw DomainError("zero branch requires k = 0");
      return;
    case Branch::outgoing:
    case Branch::incoming:
      if (!(k.real() > 0.0)) throw DomainError("outgoing/incoming branch requires Re k > 0");
      return;
    case Branch::negative:
      if (!(k.real() < 0.0)) throw DomainError("negative branch requires Re k < 0");
      return;
  }
}

double c_d(int d) {
  check_dimension(d);
  const double h = 0.5 * (d + 1);
  return std::tgamma(h) / std::pow(pi, h);
}

cd green(int d, const WaveNumber& k, double r) {
  check_dimension(d);
  check_radius(r);
  validate(k);
  cd g;
  if (d == 1) g = green1(k.k, k.branch, r);
  else if (d == 2) g = green2(k.k, k.branch, r);
  else g = green3(k.k, k.branch, r);
  if (k.branch == Branch::negative && k.k.imag() == 0.0) g.imag(0.0);
  return g;
}

cd green_regular_2d(const WaveNumber& k, double r) {
  check_radius(r);
  validate(k);
  cd g = green2_regular(k.k, k.branch, r);
  if (k.branch == Branch::negative && k.k.imag() == 0.0) g.imag(0.0);
  return g;
}

cd green_helmholtz(int d, cd k, double r, ImSign sign) {
  check_dimension(d);
  check_radius(r);
  if (!(k.real() > 0.0)) throw DomainError("green_helmholtz: requires Re k > 0");
  const double s = sign == ImSign::plus ? 1.0 : -1.0;
  const cd e = std::exp(s * I * k * r);
  if (d == 1) return s * I * e / (2.0 * k);
  if (d == 2) {
    const auto kind = sign == ImSign::plus ? specfun::HankelKind::first : specfun::HankelKind::second;
    return s * 0.25 * I * specfun::hankel0(k * r, kind);
  }
  return e / (4.0 * pi * r);
}

double green_negk_quadrature_oracle(int d, double k, double r) {
  check_dimension(d);
  check_radius(r);
  if (!(k < 0.0)) throw DomainError("green_negk_quadrature_oracle: requires real k < 0");
  const double p = 0.5 * (d + 1);
  const auto integrand = [&](double t) { return std::exp(k * t) * t * std::pow(t * t + r * r, -p); };
  // split at the peak t ~ r so both transforms see a smooth integrand
  boost::math::quadrature::tanh_sinh<double> head_rule;
  boost::math::quadrature::exp_sinh<double> tail_rule;
  double head_err = 0.0, tail_err = 0.0;
  const double head = head_rule.integrate(integrand, 0.0, r, 1e-14, &head_err);
  const double tail = tail_rule.integrate([&](double u) { return integrand(r + u); }, 1e-14, &tail_err);
  const double value = c_d(d) * (head + tail);
  const double error = c_d(d) * (head_err + tail_err);
  if (!(error <= std::max(1e-10, 1e-10 * value))) {
    throw ConvergenceError("green_negk_quadrature_oracle: quadrature did not converge");
  }
  return value;
}

double fourier_dc_value(int d, double k) {
  check_dimension(d);
  if (!(k < 0.0)) throw DomainError("fourier_dc_value: requires k < 0");
  return -1.0 / k;
}

ExpansionCoeffs expansion_terms(int d, cd k, double abs_x) {
  check_dimension(d);
  if (!(abs_x > 0.0)) throw DomainError("expansion_terms: |x| must be positive");
  const cd L = std::log(k * abs_x);
  const double x = abs_x;
  ExpansionCoeffs e;
  e.d = d;
  if (d == 1) {
    e.A = {-(L + euler_gamma) / pi + I, -0.5 * k * x,
           -(k * k * x * x / (2.0 * pi)) * (1.5 - euler_gamma - L) - 0.5 * I * k * k * x * x};
    e.Glog = {-1.0 / pi, 0.0, k * k * x * x / (2.0 * pi)};
  } else if (d == 2) {
    e.A = {1.0 / (2.0 * pi * x), -(k / (2.0 * pi)) * (L - std::log(2.0) + euler_gamma) + 0.5 * I * k,
           -k * k * x / (2.0 * pi)};
    e.Glog = {0.0, -k / (2.0 * pi), 0.0};
  } else {
    e.A = {1.0 / (2.0 * pi * pi * x * x), k / (4.0 * pi * x),
           (k * k / (2.0 * pi * pi)) * (1.0 - euler_gamma + pi * I - L)};
    e.Glog = {0.0, 0.0, -k * k / (2.0 * pi * pi)};
  }
  return e;
}

double farfield_deficit(int d, double k, double r) {
  const auto wn = WaveNumber::outgoing(k);
  const double h = 1e-3;
  const cd dg = (green(d, wn, r + h) - green(d, wn, r - h)) / (2.0 * h);
  return std::pow(r, 0.5 * (d - 1)) * std::abs(dg - I * k * green(d, wn, r));
}

double fractional_heat_kernel(int d, double t, double r) {
  if (!(t > 0.0)) throw DomainError("fractional_heat_kernel: requires t > 0");
  if (!(r >= 0.0)) throw DomainError("fractional_heat_kernel: requires r >= 0");
  return c_d(d) * t * std::pow(t * t + r * r, -0.5 * (d + 1));
}

} // namespace photon::greens
