#pragma once

#include <complex>

namespace ncs::special {

/// Principal-branch log-gamma for complex argument (Lanczos, g = 7).
/// Relative accuracy ~1e-14 for Re z >= 0.5; reflection handles the rest.
std::complex<double> lgamma_complex(std::complex<double> z);

/// Digamma for real positive argument (recurrence + asymptotic series).
double digamma(double x);

/// Trigamma for real positive argument.
double trigamma(double x);

/// Bessel J0; power series below 8, std::cyl_bessel_j beyond.
double bessel_j0(double x);

}  // namespace ncs::special
