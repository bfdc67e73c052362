#pragma once

// Entire kernels and the complex log-gamma used by the characteristic
// function evaluators. Every kernel is evaluated through a Taylor series
// near its removable singularity so that rho = 0 never divides by zero.

#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "frozen_sl/config.hpp"

namespace frozen_sl::special {

/// sin(pi x), exactly zero at integers.
inline double sinpi(double x) {
  double r = std::remainder(x, 2.0);  // [-1, 1]
  if (std::abs(r) > 0.5) r = std::copysign(1.0, r) - r;
  if (std::abs(r) > 0.25) return std::copysign(std::cos(pi * (0.5 - std::abs(r))), r);
  return std::sin(pi * r);
}

/// cos(pi x), exactly zero at half-integers.
inline double cospi(double x) {
  double u = std::abs(std::remainder(x, 2.0));  // [0, 1]
  double sign = 1.0;
  if (u > 0.5) {
    u = 1.0 - u;
    sign = -1.0;
  }
  return sign * (u > 0.25 ? std::sin(pi * (0.5 - u)) : std::cos(pi * u));
}

inline cplx sinpi(cplx z) {
  const double y = pi * z.imag();
  return {sinpi(z.real()) * std::cosh(y), cospi(z.real()) * std::sinh(y)};
}

inline cplx cospi(cplx z) {
  const double y = pi * z.imag();
  return {cospi(z.real()) * std::cosh(y), -sinpi(z.real()) * std::sinh(y)};
}

/// S(z) = sin(pi z) / z, with S(0) = pi.
inline cplx sinc_pi(cplx z) {
  const cplx w = pi * z;
  if (std::abs(w) < 0.2) {
    const cplx w2 = w * w;
    cplx term = 1.0, sum = 1.0;
    for (int j = 1; j <= 7; ++j) {
      term *= -w2 / double((2 * j) * (2 * j + 1));
      sum += term;
    }
    return pi * sum;
  }
  return sinpi(z) / z;
}

/// dS/dz.
inline cplx sinc_pi_deriv(cplx z) {
  const cplx w = pi * z;
  if (std::abs(w) < 0.5) {
    // S(z) = pi * sum_j (-1)^j w^{2j} / (2j+1)!
    const cplx w2 = w * w;
    cplx power = w;           // w^{2j-1}
    double factorial = 6.0;   // (2j+1)!
    cplx sum = 0.0;
    for (int j = 1; j <= 11; ++j) {
      const double sign = j % 2 ? -1.0 : 1.0;
      sum += sign * 2.0 * j * power / factorial;
      power *= w2;
      factorial *= double((2 * j + 2) * (2 * j + 3));
    }
    return pi * pi * sum;
  }
  return (w * cospi(z) - sinpi(z)) / (z * z);
}

/// sin(z)/z and its derivative.
inline cplx sinc(cplx z) {
  if (std::abs(z) < 0.5) {
    const cplx z2 = z * z;
    cplx term = 1.0, sum = 1.0;
    for (int j = 1; j <= 9; ++j) {
      term *= -z2 / double((2 * j) * (2 * j + 1));
      sum += term;
    }
    return sum;
  }
  return std::sin(z) / z;
}

inline cplx sinc_deriv(cplx z) {
  if (std::abs(z) < 0.5) {
    const cplx z2 = z * z;
    cplx power = z;
    double factorial = 6.0;
    cplx sum = 0.0;
    for (int j = 1; j <= 11; ++j) {
      const double sign = j % 2 ? -1.0 : 1.0;
      sum += sign * 2.0 * j * power / factorial;
      power *= z2;
      factorial *= double((2 * j + 2) * (2 * j + 3));
    }
    return sum;
  }
  return (z * std::cos(z) - std::sin(z)) / (z * z);
}

/// (1 - cos z)/z^2 and its derivative.
inline cplx versinc(cplx z) {
  if (std::abs(z) < 1.0) {
    const cplx z2 = z * z;
    cplx term = 0.5, sum = 0.5;
    for (int j = 1; j <= 12; ++j) {
      term *= -z2 / double((2 * j + 1) * (2 * j + 2));
      sum += term;
    }
    return sum;
  }
  return (1.0 - std::cos(z)) / (z * z);
}

inline cplx versinc_deriv(cplx z) {
  if (std::abs(z) < 1.5) {
    // sum_{j>=1} (-1)^j 2j z^{2j-1} / (2j+2)!
    const cplx z2 = z * z;
    cplx power = z;
    double factorial = 24.0;
    cplx sum = 0.0;
    for (int j = 1; j <= 14; ++j) {
      const double sign = j % 2 ? -1.0 : 1.0;
      sum += sign * 2.0 * j * power / factorial;
      power *= z2;
      factorial *= double((2 * j + 3) * (2 * j + 4));
    }
    return sum;
  }
  return (z * std::sin(z) - 2.0 * (1.0 - std::cos(z))) / (z * z * z);
}

namespace detail {

// log(sin(pi z)) without overflow for large |Im z|.
inline cplx log_sinpi(cplx z) {
  const cplx w = pi * z;
  const cplx i{0.0, 1.0};
  if (std::abs(w.imag()) < 20.0) return std::log(sinpi(z));
  if (w.imag() > 0.0) return -i * w + std::log(cplx{0.0, 0.5}) + std::log(1.0 - std::exp(2.0 * i * w));
  return i * w + std::log(cplx{0.0, -0.5}) + std::log(1.0 - std::exp(-2.0 * i * w));
}

}  // namespace detail

/// A branch of log Gamma(z) (Lanczos, g = 7). Only exp() of sums of these
/// is ever used, so the branch is irrelevant. Poles give real part +inf.
inline cplx log_gamma(cplx z) {
  static constexpr std::array<double, 9> p = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    if (z.imag() == 0.0 && z.real() == std::floor(z.real()))
      return {std::numeric_limits<double>::infinity(), 0.0};
    return std::log(pi) - detail::log_sinpi(z) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  cplx x = p[0];
  for (int i = 1; i < 9; ++i) x += p[i] / (z + double(i));
  const cplx t = z + 7.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace frozen_sl::special
