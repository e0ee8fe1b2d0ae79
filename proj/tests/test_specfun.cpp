#include "doctest.h"
#include "oracles.hpp"

#include "photon/error.hpp"
#include "photon/specfun.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <vector>

using namespace photon::specfun;

namespace {

double rel_err(cd got, cd want) { return std::abs(got - want) / std::abs(want); }

// Sample grid of |z| <= 50 avoiding the negative real axis.
std::vector<cd> complex_grid() {
  std::vector<cd> pts;
  for (double r : {0.01, 0.3, 1.0, 2.5, 5.0, 7.9, 8.1, 12.0, 19.5, 20.5, 35.0, 50.0}) {
    for (double a : {-3.1, -2.5, -1.6, -0.7, 0.0, 0.4, 1.2, 1.5708, 2.2, 3.0}) {
      pts.push_back(std::polar(r, a));
    }
  }
  return pts;
}

// Bessel-type functions grow like exp|Im z| / sqrt|z|; relative accuracy
// near zeros is measured against that envelope.
double bessel_scale(cd z) { return std::exp(std::abs(z.imag())) / std::sqrt(1.0 + std::abs(z)); }

} // namespace

TEST_CASE("E1 reference values") {
  CHECK(exp_integral_e1(1.0).real() == doctest::Approx(0.21938393439552).epsilon(1e-13));
  CHECK(std::abs(exp_integral_e1(1.0).imag()) < 1e-15);

  // z = 10 against quadrature of int_0^inf e^{-(z+u)}/(z+u) du along the real ray.
  boost::math::quadrature::exp_sinh<double> integrator;
  const double z = 10.0;
  const double ref = integrator.integrate([&](double u) { return std::exp(-(z + u)) / (z + u); });
  CHECK(ref == doctest::Approx(4.15697e-6).epsilon(1e-5));
  CHECK(rel_err(exp_integral_e1(z), ref) < 1e-12);

  const cd w{0.5, 0.5};
  CHECK(std::abs(exp_integral_e1(std::conj(w)) - std::conj(exp_integral_e1(w))) < 1e-15);
}

TEST_CASE("E1 matches the extended-precision series on |z| <= 50") {
  for (cd z : complex_grid()) {
    if (z.imag() == 0.0 && z.real() < 0.0) continue;
    INFO("z = " << z);
    CHECK(rel_err(exp_integral_e1(z), oracle::e1(z)) < 1e-12);
  }
}

TEST_CASE("E1 branches agree on the crossover curve") {
  // crossover is |z| + Re z = 7, i.e. the parabola y^2 = 49 - 14 x
  for (double y = -20.0; y <= 20.0; y += 0.5) {
    const double x = (49.0 - y * y) / 14.0;
    const cd z{x, y};
    if (y == 0.0 && x <= 0.0) continue;
    const cd series = detail::e1_series(z);
    const cd cf = std::exp(-z) * detail::e1_continued_fraction_scaled(z);
    INFO("z = " << z);
    CHECK(rel_err(series, cf) < 1e-10);
  }
}

TEST_CASE("E1 rejects the branch cut") {
  CHECK_THROWS_AS(exp_integral_e1(0.0), photon::DomainError);
  CHECK_THROWS_AS(exp_integral_e1(-2.0), photon::DomainError);
  CHECK_NOTHROW(exp_integral_e1(cd{-2.0, 1e-12}));
}

TEST_CASE("J0 and Y0 reference values") {
  CHECK(std::abs(bessel_j0(0.0) - 1.0) < 1e-16);
  CHECK(bessel_j0(1.0).real() == doctest::Approx(0.7651976865579666).epsilon(1e-14));
  CHECK(bessel_y0(1.0).real() == doctest::Approx(0.08825696421567696).epsilon(1e-13));
  CHECK(bessel_y0(0.5).real() == doctest::Approx(-0.44451873350670656).epsilon(1e-13));

  // first zero of J0 located by bisection on the extended-precision series
  double lo = 2.0, hi = 3.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (oracle::bessel(lo).j0.real() * oracle::bessel(mid).j0.real() <= 0.0 ? hi : lo) = mid;
  }
  CHECK(lo == doctest::Approx(2.404825557695773).epsilon(1e-14));
  CHECK(std::abs(bessel_j0(2.404825557695773)) <= 1e-10);

  CHECK_THROWS_AS(bessel_y0(-1.0), photon::DomainError);
}

TEST_CASE("J0, Y0 and Hankel functions match the extended-precision series") {
  for (cd z : complex_grid()) {
    if (z.imag() == 0.0 && z.real() < 0.0) continue;
    const auto ref = oracle::bessel(z);
    const double scale = bessel_scale(z);
    INFO("z = " << z);
    CHECK(std::abs(bessel_j0(z) - ref.j0) <= 1e-12 * std::max(std::abs(ref.j0), scale));
    CHECK(std::abs(bessel_y0(z) - ref.y0) <= 1e-12 * std::max(std::abs(ref.y0), scale));
  }
  const cd z{1.0, 0.3};
  CHECK(std::abs(hankel0(z, HankelKind::first) - (bessel_j0(z) + cd{0, 1} * bessel_y0(z))) < 1e-15);
  CHECK(std::abs(hankel0(1.0, HankelKind::first) - (bessel_j0(1.0) + cd{0, 1} * bessel_y0(1.0))) <
        1e-15);
  const cd w{2.0, 1.0};
  CHECK(std::abs(hankel0(std::conj(w), HankelKind::second) -
                 std::conj(hankel0(w, HankelKind::first))) < 1e-15);
}

TEST_CASE("Hankel large-argument behaviour") {
  const double x = 30.0;
  const cd h = hankel0(x, HankelKind::first);
  const cd leading = std::sqrt(2.0 / (pi * x)) * std::exp(cd{0, 1} * (x - 0.25 * pi));
  CHECK(std::abs(h * std::sqrt(x)) < 1.0);
  CHECK(std::abs(h - leading) < 0.01 * std::abs(leading));
  // decays along a ray in the upper half plane
  const cd dir = std::polar(1.0, 0.3);
  double prev = std::abs(hankel0(5.0 * dir, HankelKind::first));
  for (double r : {10.0, 20.0, 40.0}) {
    const double cur = std::abs(hankel0(r * dir, HankelKind::first));
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("Wronskian J0 Y0' - J0' Y0 = 2/(pi x)") {
  const double h = 1e-6;
  for (double x : {0.5, 1.0, 5.0, 20.0}) {
    const auto d = [&](auto f) { return (f(x + h) - f(x - h)) / (2.0 * h); };
    const cd w = bessel_j0(x) * d([](double t) { return bessel_y0(t); }) -
                 d([](double t) { return bessel_j0(t); }) * bessel_y0(x);
    INFO("x = " << x);
    CHECK(std::abs(w - 2.0 / (pi * x)) < 1e-9);
  }
}

TEST_CASE("Struve K0") {
  const cd k20 = struve_k0(20.0);
  CHECK(std::abs(k20 - 2.0 / (20.0 * pi)) < 0.01 * 2.0 / (20.0 * pi));
  CHECK(rel_err(struve_k0(1.0), oracle::struve_k0(1.0)) < 1e-10);
  for (double x : {0.1, 1.0, 7.0, 9.0, 15.0, 25.0, 50.0}) {
    CHECK(std::abs(struve_k0(x).imag()) <= 1e-12);
  }
  for (cd z : complex_grid()) {
    if (z.imag() == 0.0 && z.real() < 0.0) continue;
    INFO("z = " << z);
    CHECK(rel_err(struve_k0(z), oracle::struve_k0(z)) < 1e-10);
  }
  CHECK_THROWS_AS(struve_k0(-1.0), photon::DomainError);
}

TEST_CASE("conjugate symmetry") {
  for (cd z : {cd{0.7, 0.4}, cd{3.0, -2.0}, cd{12.0, 1.0}, cd{25.0, -3.0}}) {
    CHECK(std::abs(exp_integral_e1(std::conj(z)) - std::conj(exp_integral_e1(z))) <
          1e-14 * std::abs(exp_integral_e1(z)));
    CHECK(std::abs(bessel_j0(std::conj(z)) - std::conj(bessel_j0(z))) < 1e-13 * bessel_scale(z));
    CHECK(std::abs(bessel_y0(std::conj(z)) - std::conj(bessel_y0(z))) < 1e-13 * bessel_scale(z));
    CHECK(std::abs(struve_k0(std::conj(z)) - std::conj(struve_k0(z))) <
          1e-13 * std::abs(struve_k0(z)));
  }
}
