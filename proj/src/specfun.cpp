#include "photon/specfun.hpp"

#include "photon/error.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace photon::specfun {

namespace {

constexpr double e1_series_limit = 7.0;  // on |z| + Re z
constexpr double bessel_series_radius = 8.0;
constexpr double asymptotic_radius = 20.0;
constexpr double k0_asymptotic_radius = 30.0;
constexpr double tiny = 1e-300;

const cd I{0.0, 1.0};

bool on_branch_cut(cd z) { return z.imag() == 0.0 && z.real() <= 0.0; }

void require_off_cut(cd z, const char* name) {
  if (on_branch_cut(z)) {
    throw DomainError(std::string(name) + ": argument on the branch cut (" +
                      std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
  }
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError(std::string(name) + ": non-finite argument");
  }
}

// J0 series sum_m (-z^2/4)^m / (m!)^2 and the companion sum for Y0,
// sum_{m>=1} (-1)^{m+1} H_m (z^2/4)^m / (m!)^2.
struct BesselSeries {
  cd j0;
  cd y0_tail;
};

BesselSeries bessel_series(cd z) {
  const cd q = -0.25 * z * z;
  cd term = 1.0;
  cd j0 = 1.0;
  cd tail = 0.0;
  double harmonic = 0.0;
  for (int m = 1; m < 200; ++m) {
    term *= q / (double(m) * double(m));
    harmonic += 1.0 / m;
    j0 += term;
    tail -= harmonic * term;
    if (std::abs(term) * (1.0 + harmonic) < 1e-18 * (std::abs(j0) + std::abs(tail) + tiny)) break;
  }
  return {j0, tail};
}

// Bessel J_n(z), n = 0..2*count, by the trapezoidal rule on
// (1/2pi) int_0^{2pi} exp(i(z sin t - n t)) dt (exact up to aliasing).
void bessel_even_orders(cd z, int count, cd* out) {
  const int nodes = 2 * (static_cast<int>(std::abs(z)) + 2 * count + 40);
  for (int k = 0; k <= count; ++k) out[k] = 0.0;
  for (int m = 0; m < nodes; ++m) {
    const double t = 2.0 * pi * m / nodes;
    const cd f = std::exp(I * z * std::sin(t));
    for (int k = 0; k <= count; ++k) {
      out[k] += f * std::polar(1.0, -2.0 * k * t);
    }
  }
  for (int k = 0; k <= count; ++k) out[k] /= double(nodes);
}

struct MidRange {
  cd j0;
  cd y0;
};

MidRange bessel_mid(cd z) {
  const int count = static_cast<int>(std::abs(z)) / 2 + 20;
  std::array<cd, 64> jn{};
  bessel_even_orders(z, count, jn.data());
  cd sum = 0.0;
  for (int k = 1; k <= count; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * jn[k] / double(k);
  }
  const cd y0 = (2.0 / pi) * (std::log(0.5 * z) + euler_gamma) * jn[0] - (4.0 / pi) * sum;
  return {jn[0], y0};
}

// Hankel asymptotic expansion; valid for |z| large with
// -pi < arg z < 2pi (first kind) or -2pi < arg z < pi (second kind).
cd hankel_asymptotic(cd z, HankelKind kind) {
  const double s = (kind == HankelKind::first) ? 1.0 : -1.0;
  const cd phase = std::exp(s * I * (z - 0.25 * pi));
  const cd pref = std::sqrt(2.0 / (pi * z));
  cd term = 1.0;
  cd sum = 1.0;
  double last = 1.0;
  for (int k = 1; k < 80; ++k) {
    const double a = (2.0 * k - 1.0) * (2.0 * k - 1.0);
    term *= -a / (8.0 * k) * (s * I) / z;
    const double mag = std::abs(term);
    if (mag > last) break;
    sum += term;
    last = mag;
    if (mag < 1e-17 * std::abs(sum)) break;
  }
  return pref * phase * sum;
}

struct LargeArgument {
  cd j0;
  cd y0;
};

// Left half plane is mapped to the right via J0(-z) = J0(z) and
// Y0(z e^{+-i pi}) = Y0(z) +- 2i J0(z), where the expansions are accurate.
LargeArgument bessel_large(cd z) {
  const bool reflect = z.real() < 0.0;
  const cd w = reflect ? -z : z;
  const cd h1 = hankel_asymptotic(w, HankelKind::first);
  const cd h2 = hankel_asymptotic(w, HankelKind::second);
  const cd j0 = 0.5 * (h1 + h2);
  cd y0 = (h1 - h2) / (2.0 * I);
  if (reflect) y0 += (z.imag() > 0.0 ? 2.0 : -2.0) * I * j0;
  return {j0, y0};
}

cd struve_h0_series(cd z) {
  const cd half = 0.5 * z;
  const cd q = -half * half;
  // (z/2) sum (-1)^n (z/2)^{2n} / Gamma(n + 3/2)^2, Gamma(3/2)^2 = pi/4
  cd term = half * (4.0 / pi);
  cd sum = term;
  for (int n = 0; n < 200; ++n) {
    const double g = n + 1.5;
    term *= q / (g * g);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

template <int n>
struct GaussLegendre {
  std::array<double, n> x{};
  std::array<double, n> w{};
  GaussLegendre() {
    for (int i = 0; i < n; ++i) {
      double t = std::cos(pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (t * p1 - p0) / (t * t - 1.0);
        const double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-16) break;
      }
      x[i] = t;
      w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};

// H0(z) = (2/pi) int_0^{pi/2} sin(z cos t) dt, 64-point Gauss-Legendre.
cd struve_h0_quadrature(cd z) {
  static const GaussLegendre<64> rule;
  cd sum = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double t = 0.25 * pi * (rule.x[i] + 1.0);
    sum += rule.w[i] * std::sin(z * std::cos(t));
  }
  return 0.5 * sum;
}

// K0(z) = (2/pi) int_0^inf e^{-zt} (1+t^2)^{-1/2} dt along the ray
// t = tau e^{-i arg(z)/2}, which keeps the exponent decaying for |arg z| < pi.
// Geometric panels in u = a tau, a = |z| cos(arg(z)/2), out to u = 50.
cd struve_k0_laplace(cd z) {
  static const GaussLegendre<20> rule;
  const double phi = std::arg(z);
  const double a = std::abs(z) * std::cos(0.5 * phi);
  const cd dir = std::polar(1.0 / a, -0.5 * phi);
  double lo = 0.0;
  double len = std::min(1.0, a / 3.0);
  cd sum = 0.0;
  while (lo < 50.0) {
    for (int i = 0; i < 20; ++i) {
      const double u = lo + 0.5 * len * (rule.x[i] + 1.0);
      const cd t = u * dir;
      sum += 0.5 * len * rule.w[i] * std::exp(-z * t) / std::sqrt(1.0 + t * t);
    }
    lo += len;
    len *= 2.0;
  }
  return (2.0 / pi) * dir * sum;
}

cd struve_k0_asymptotic(cd z) {
  // (1/pi^2) sum_k (-1)^k Gamma(k+1/2)^2 (z/2)^{-2k-1}
  const cd inv = 2.0 / z;
  cd term = inv / pi;  // Gamma(1/2)^2 / pi^2 = 1/pi
  cd sum = term;
  double last = std::abs(term);
  for (int k = 0; k < 100; ++k) {
    const double g = k + 0.5;
    term *= -g * g * inv * inv;
    const double mag = std::abs(term);
    if (mag > last) break;
    sum += term;
    last = mag;
    if (mag < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

} // namespace

namespace detail {

bool e1_uses_series(cd z) { return std::abs(z) + z.real() <= e1_series_limit; }

cd e1_series(cd z) {
  // E1(z) = -log z - gamma - sum_{n>=1} (-1)^n z^n / (n n!)
  cd term = 1.0;
  cd sum = 0.0;
  for (int n = 1; n < 1000; ++n) {
    term *= -z / double(n);
    const cd add = term / double(n);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return -std::log(z) - euler_gamma - sum;
}

cd e1_continued_fraction_scaled(cd z) {
  if (std::abs(z) > 1e6) {
    const cd u = 1.0 / z;
    return u * (1.0 - u * (1.0 - u * (2.0 - 6.0 * u)));
  }
  // e^z E1(z) = 1/(z+1- 1/(z+3- 4/(z+5- ...))), modified Lentz.
  cd b = z + 1.0;
  cd c = 1.0 / tiny;
  cd d = 1.0 / b;
  cd h = d;
  for (int i = 1; i < 20000; ++i) {
    const double an = -double(i) * double(i);
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const cd del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return h;
  }
  throw ConvergenceError("exp_integral_e1: continued fraction did not converge");
}

} // namespace detail

cd exp_integral_e1(cd z) {
  require_off_cut(z, "exp_integral_e1");
  if (detail::e1_uses_series(z)) return detail::e1_series(z);
  return std::exp(-z) * detail::e1_continued_fraction_scaled(z);
}

cd exp_integral_e1_scaled(cd z) {
  require_off_cut(z, "exp_integral_e1");
  if (detail::e1_uses_series(z)) return std::exp(z) * detail::e1_series(z);
  return detail::e1_continued_fraction_scaled(z);
}

cd bessel_j0(cd z) {
  const double r = std::abs(z);
  if (r <= bessel_series_radius) return bessel_series(z).j0;
  if (r < asymptotic_radius) return bessel_mid(z).j0;
  return bessel_large(z).j0;
}

cd bessel_y0(cd z) {
  require_off_cut(z, "bessel_y0");
  const double r = std::abs(z);
  if (r <= bessel_series_radius) {
    const auto s = bessel_series(z);
    return (2.0 / pi) * ((std::log(0.5 * z) + euler_gamma) * s.j0 + s.y0_tail);
  }
  if (r < asymptotic_radius) return bessel_mid(z).y0;
  return bessel_large(z).y0;
}

cd hankel0(cd z, HankelKind kind) {
  require_off_cut(z, "hankel0");
  if (std::abs(z) >= asymptotic_radius && z.real() >= 0.0) return hankel_asymptotic(z, kind);
  const double s = (kind == HankelKind::first) ? 1.0 : -1.0;
  return bessel_j0(z) + s * I * bessel_y0(z);
}

cd struve_h0(cd z) {
  if (std::abs(z) <= bessel_series_radius) return struve_h0_series(z);
  return struve_h0_quadrature(z);
}

cd struve_k0(cd z) {
  require_off_cut(z, "struve_k0");
  const double r = std::abs(z);
  if (r <= bessel_series_radius) return struve_h0_series(z) - bessel_y0(z);
  if (z.real() >= 0.0) {
    if (r >= k0_asymptotic_radius) return struve_k0_asymptotic(z);
    return struve_k0_laplace(z);
  }
  if (r < asymptotic_radius && std::cos(0.5 * std::arg(z)) >= 0.15) return struve_k0_laplace(z);
  // K0(z) = -K0(-z) -+ 2i H0^{(2,1)}(-z) for Im z >< 0; the Hankel term decays.
  const cd w = -z;
  if (z.imag() > 0.0) return -struve_k0(w) - 2.0 * I * hankel0(w, HankelKind::second);
  return -struve_k0(w) + 2.0 * I * hankel0(w, HankelKind::first);
}

} // namespace photon::specfun
