#include "doctest.h"

#include "photon/boundstates.hpp"
#include "photon/eigensolver.hpp"
#include "photon/error.hpp"

#include <cmath>

using namespace photon::bound;
using photon::nystrom::PhysicalParams;

namespace {

constexpr double pi = 3.14159265358979323846;

PhysicalParams base(int d) {
  PhysicalParams p;
  p.d = d;
  return p;
}

PhysicalParams inclusion_1d(double eps, double g2s0) {
  PhysicalParams p = base(1);
  p.epsilon = eps;
  p.density = g2s0;
  return p;
}

double mu1(const DensityProfile& prof, double omega, const PhysicalParams& p, int n = default_bs_nodes) {
  return mu_spectrum(build_bs_operator(prof, omega, p, n), 1)[0];
}

} // namespace

TEST_CASE("density profiles") {
  const auto sq = DensityProfile::square(2, 0.5, 1.0);
  CHECK(sq.support_measure() == doctest::Approx(4.0));
  CHECK(sq.ball_radius() == doctest::Approx(2.0 / std::sqrt(pi)).epsilon(1e-14));
  CHECK(DensityProfile::square(3, 1.0, 1.0).ball_radius() == doctest::Approx(std::cbrt(6.0 / pi)).epsilon(1e-14));
  CHECK(sq.integral_power(2) == doctest::Approx(0.25 * 4.0));
  auto p = base(3);
  p.epsilon = 0.1;
  const auto inc = DensityProfile::inclusion(p);
  CHECK(inc.rho0 == doctest::Approx(10.0));
  CHECK(inc.ball_radius() == 0.1);
  CHECK_THROWS_AS(DensityProfile::square(1, -1.0, 1.0), photon::DomainError);
  CHECK_THROWS_AS(DensityProfile::square(2, 1.0, 1.0, 0.5), photon::DomainError);
}

TEST_CASE("Birman-Schwinger operator structure") {
  const auto p = base(1);
  const auto prof = DensityProfile::square(1, 1.0, 1.0, 0.3);
  const auto op = build_bs_operator(prof, -0.5, p);
  CHECK((op.matrix - op.matrix.transpose()).norm() == 0.0);
  const auto all = mu_spectrum(op, op.matrix.rows());
  for (double m : all) CHECK(m >= -1e-10);
  for (std::size_t i = 0; i + 1 < all.size(); ++i) CHECK(all[i] >= all[i + 1]);
  // decreasing in omega, and vanishing as omega -> -inf
  double prev = INFINITY;
  for (double w : {-0.1, -0.5, -1.0, -2.0}) {
    const double m = mu1(prof, w, p);
    CHECK(m < prev);
    prev = m;
  }
  CHECK(mu1(prof, -100.0, p) < 0.01 * mu1(prof, -1.0, p));
  // translation invariance of a single square
  CHECK(mu1(DensityProfile::square(1, 1.0, 1.0, 0.0), -0.5, p) == doctest::Approx(mu1(prof, -0.5, p)).epsilon(1e-12));
  // node doubling
  CHECK(std::abs(mu1(prof, -0.5, p, 64) - mu1(prof, -0.5, p, 128)) < 1e-6);
  CHECK_THROWS_AS(build_bs_operator(prof, 0.0, p), photon::DomainError);
  for (int d : {2, 3}) {
    const auto op2 = build_bs_operator(DensityProfile::square(d, 1.0, 1.0), -0.5, base(d), 32);
    CHECK((op2.matrix - op2.matrix.transpose()).norm() == 0.0);
    CHECK(mu_spectrum(op2, 32).back() >= -1e-10);
  }
}

TEST_CASE("density monotonicity") {
  const auto p = base(1);
  const auto small = DensityProfile::square(1, 0.5, 0.4, 0.3);
  const auto big = DensityProfile::square(1, 1.0, 1.0, 0.0);
  for (double w : {-0.05, -0.5, -3.0}) CHECK(mu1(small, w, p) <= mu1(big, w, p) + 1e-10);
}

TEST_CASE("bound state counting") {
  auto weak = base(1);
  weak.g = 1e-4;
  const auto prof = DensityProfile::square(1, 1.0, 1.0);
  for (double w : {-1e-3, -0.1, -1.0}) CHECK(count_bound_states_below(prof, w, weak) == 0);
  CHECK(count_bound_states_below(prof, -0.1, base(1)) >= 1);
  // d = 2 below the Sobolev threshold: no crossing anywhere on the scan
  PhysicalParams p2 = base(2);
  const auto sq = DensityProfile::square(2, 0.5, 1.0);
  REQUIRE(no_bound_state_condition(sq, p2));
  for (int j = -20; j <= 10; ++j) CHECK(count_bound_states_below(sq, -p2.c * std::ldexp(1.0, j), p2, 32) == 0);
}

TEST_CASE("solve bound state for a 1D square") {
  const auto p = base(1);
  const auto prof = DensityProfile::square(1, 1.0, 1.0, 0.3);
  const auto r = solve_bound_state(prof, p, 1);
  REQUIRE(r.found);
  CHECK(r.omega < 0.0);
  CHECK(std::abs(r.mu - 1.0) <= 1e-10);
  CHECK(necessary_condition(prof, p, r.omega));
  // the full operator on the same support is singular there
  PhysicalParams full = p;
  full.scaling = photon::nystrom::DensityScaling::raw;
  full.density = prof.rho0;
  full.epsilon = prof.R;
  const auto m = photon::nystrom::build_full_operator(full, r.omega, photon::nystrom::make_rule(1, 64));
  CHECK(std::abs(photon::eigen::characteristic_value(m)) <= 1e-6);
  // no second even-or-odd state for this density at this strength
  const auto r2 = solve_bound_state(prof, p, 2);
  if (r2.found) CHECK(r2.omega > r.omega);
  else CHECK(r2.message.find("no bound state") != std::string::npos);
}

TEST_CASE("small inclusion exponent in 1D") {
  // g^2 s0 |B_1| / (pi c) = 1/2 < Omega: omega* ~ -c eps^p with p = 1
  const double g2s0 = pi / 4.0;
  const double p_exact = 1.0 * pi / (g2s0 * 2.0) - 1.0;
  std::vector<double> x, y;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const auto p = inclusion_1d(eps, g2s0);
    const auto r = solve_bound_state(DensityProfile::inclusion(p), p, 1);
    REQUIRE(r.found);
    x.push_back(std::log(eps));
    y.push_back(std::log(-r.omega / p.c));
  }
  const double mx = (x[0] + x[1] + x[2]) / 3.0, my = (y[0] + y[1] + y[2]) / 3.0;
  double sxy = 0.0, sxx = 0.0;
  for (int i = 0; i < 3; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  CHECK(std::abs(sxy / sxx - p_exact) <= 0.05 * p_exact);
}

TEST_CASE("strong 1D inclusion approaches the limiting frequency") {
  // g^2 s0 |B_1| / (pi c) = 2 > Omega: omega* -> Omega - 2 at rate 1/log eps
  const double omega0 = 1.0 - 2.0;
  std::vector<double> scaled;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const auto p = inclusion_1d(eps, pi);
    const auto r = solve_bound_state(DensityProfile::inclusion(p), p, 1);
    REQUIRE(r.found);
    scaled.push_back((r.omega - omega0) * std::log(eps));
  }
  for (double s : scaled) {
    CHECK(s > 0.1);
    CHECK(s < 1.0);
  }
  CHECK(std::abs(scaled[2] - scaled[0]) < 0.2 * std::abs(scaled[0]));
}

TEST_CASE("Sobolev threshold and count bound") {
  CHECK(sobolev_threshold(2) == doctest::Approx(0.5 * std::sqrt(4.0 * pi)).epsilon(1e-15));
  CHECK(sobolev_threshold(2) == doctest::Approx(1.7725).epsilon(1e-4));
  CHECK(sobolev_threshold(3) == doctest::Approx(std::cbrt(2.0 * pi * pi)).epsilon(1e-15));
  CHECK(sobolev_threshold(4) > sobolev_threshold(3));
  CHECK_THROWS_AS(sobolev_threshold(1), photon::DomainError);

  for (int d : {2, 3}) {
    auto p = base(d);
    const auto sq = DensityProfile::square(d, 0.7, 0.6);
    CHECK(nbs_upper_bound(sq, p, 1.0) == doctest::Approx(std::pow(0.7, d) * std::pow(1.2, d)).epsilon(1e-14));
    auto low = p;
    low.Omega = 0.01;
    CHECK(nbs_upper_bound(sq, low, 1.0) / nbs_upper_bound(sq, p, 1.0) == doctest::Approx(std::pow(10.0, 2 * d)));
  }
  // a strong 2D square: counted radial states stay under the bound for a generous K_d
  auto p = base(2);
  const auto strong = DensityProfile::square(2, 4.0, 1.0);
  CHECK_FALSE(no_bound_state_condition(strong, p));
  CHECK(sufficient_condition(strong, p, 1.0));
  CHECK_FALSE(sufficient_condition(DensityProfile::square(2, 0.1, 0.1), p, 1.0));
  CHECK(sufficient_condition_at(strong, p, 0.1, -0.1));
  const int n = count_bound_states_below(strong, -0.05, p, 32);
  CHECK(n >= 1);
  CHECK(n <= nbs_upper_bound(strong, p, 10.0));
}
