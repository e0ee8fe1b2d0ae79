#pragma once

// Complex special functions used by the Green's functions.
//
// All routines work in double precision and are pure. Arguments on the
// closed negative real axis (including zero) are rejected for the functions
// with a logarithmic branch point; callers that need one-sided limits must
// pass an argument with a small imaginary part of the desired sign.
//
// Evaluation regimes (chosen by sweeping against 50-digit series oracles):
//   E1     power series when |z| + Re z <= 7, Lentz continued fraction
//          otherwise. On the crossover curve both agree to ~1e-13.
//   J0,Y0  power series for |z| <= 8, trapezoidal Bessel integral plus the
//          Neumann series for Y0 when 8 < |z| < 20, Hankel asymptotics above.
//   K0     H0 - Y0 by series for |z| <= 8. In the right half plane a
//          rotated Laplace integral up to |z| = 30, asymptotic series
//          2/(pi z) + O(z^-3) above. The left half plane uses the same
//          integral or, near the cut, reflection onto the right half plane
//          with the decaying Hankel function.

#include <complex>

namespace photon::specfun {

using cd = std::complex<double>;

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr double pi = 3.14159265358979323846264338327950288;

enum class HankelKind { first, second };

// Principal-branch exponential integral E1(z) = int_z^inf e^-t / t dt.
cd exp_integral_e1(cd z);

// e^z E1(z); stays finite where e^z and E1(z) separately overflow.
cd exp_integral_e1_scaled(cd z);

cd bessel_j0(cd z);
cd bessel_y0(cd z);
cd hankel0(cd z, HankelKind kind);

// Struve H0 (entire).
cd struve_h0(cd z);

// K0(z) = H0(z) - Y0(z).
cd struve_k0(cd z);

namespace detail {
// Individual evaluation branches, exposed for crossover testing.
cd e1_series(cd z);
cd e1_continued_fraction_scaled(cd z);
bool e1_uses_series(cd z);
} // namespace detail

} // namespace photon::specfun
