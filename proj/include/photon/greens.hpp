#pragma once

// Green's functions of ((-Delta)^{1/2} - k) in one, two and three dimensions.
//
// For Re k > 0 the outgoing branch is the continuation from Im k > 0 and the
// incoming branch the continuation from Im k < 0; both are analytic in the
// whole right half plane. Re k < 0 has a single (negative) branch, which is
// real and positive for real k.

#include <complex>
#include <vector>

namespace photon::greens {

using cd = std::complex<double>;

enum class Branch { outgoing, incoming, negative, zero };

struct WaveNumber {
  cd k;
  Branch branch;

  static WaveNumber outgoing(cd k) { return {k, Branch::outgoing}; }
  static WaveNumber incoming(cd k) { return {k, Branch::incoming}; }
  static WaveNumber negative(cd k) { return {k, Branch::negative}; }
  static WaveNumber zero() { return {0.0, Branch::zero}; }

  // Outgoing for Re k > 0, negative for Re k < 0, zero for k == 0.
  static WaveNumber physical(cd k);
};

// Throws DomainError when k and branch disagree or k is purely imaginary.
void validate(const WaveNumber& k);

// Gamma((d+1)/2) / pi^{(d+1)/2}
double c_d(int d);

cd green(int d, const WaveNumber& k, double r);

// G^k(r) - 1/(2 pi r) in two dimensions, evaluated without cancellation.
cd green_regular_2d(const WaveNumber& k, double r);

enum class ImSign { plus, minus };

// +-i e^{+-ikr}/(2k), +-(i/4) H0^{(1,2)}(kr), e^{+-ikr}/(4 pi r).
cd green_helmholtz(int d, cd k, double r, ImSign sign);

// c_d int_0^inf e^{kt} t (t^2+r^2)^{-(d+1)/2} dt for real k < 0.
double green_negk_quadrature_oracle(int d, double k, double r);

// int G^k = -1/k for k < 0.
double fourier_dc_value(int d, double k);

// Small-argument expansion eps^{d-1} G^k(eps x) = sum eps^n (A_n + log(eps) Glog_n).
struct ExpansionCoeffs {
  int d = 0;
  std::vector<cd> A;     // A_0, A_1, A_2 at the sample point
  std::vector<cd> Glog;  // Glog_0, Glog_1, Glog_2
};

ExpansionCoeffs expansion_terms(int d, cd k, double abs_x);

// |r^{(d-1)/2} (dG/dr - i k G)| for the outgoing branch, central differences.
double farfield_deficit(int d, double k, double r);

double fractional_heat_kernel(int d, double t, double r);

} // namespace photon::greens
