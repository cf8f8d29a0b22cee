// Special functions needed by the Cauchy correlation distributions:
// erf of complex argument, sine/cosine integrals, I0, L0 and the
// cancellation-free difference I0 - L0.
//
// All functions are pure and thread-safe. Domain violations throw
// std::domain_error.

#pragma once

#include <complex>

namespace cauchycorr::specfun {

using Complex = std::complex<double>;

/// Principal-branch error function of a complex argument.
///
/// Maclaurin series near the origin, the Abramowitz-Stegun 7.1.29 series
/// elsewhere. Components that would overflow are clamped to +/-DBL_MAX with
/// the exact sign, so the result is always finite for finite input.
Complex erf(Complex z);

/// Si(x) = int_0^x sin(u)/u du. Odd in x.
double sin_integral(double x);

/// Ci(x) = gamma + ln x + int_0^x (cos u - 1)/u du, x > 0.
double cos_integral(double x);

/// Modified Bessel function of the first kind, order zero. x >= 0.
double bessel_i0(double x);

/// Modified Struve function, order zero. x >= 0.
double struve_l0(double x);

/// I0(x) - L0(x) evaluated without forming either term, x >= 0.
/// Equals (2/pi) int_0^{pi/2} exp(-x sin 2t) dt; lies in (0, 1],
/// decreases strictly and behaves like 2/(pi x) for large x.
double i0_minus_l0(double x);

/// Crossover between the extended-precision series and the asymptotic
/// expansion inside i0_minus_l0.
inline constexpr double kI0MinusL0Switch = 40.0;

/// Crossover between the power series and the continued fraction for Si/Ci.
inline constexpr double kSiCiSwitch = 4.0;

/// Crossover between the Maclaurin series and the A&S 7.1.29 series for erf.
inline constexpr double kErfSeriesRadius = 2.0;

}  // namespace cauchycorr::specfun
