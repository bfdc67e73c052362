#pragma once

// Shared test fixtures: a seeded RNG (FROZEN_SL_SEED), random band-limited
// potentials and small exact oracles.

#include <cstdlib>
#include <random>

#include "frozen_sl.hpp"

namespace fixtures {

using frozen_sl::cplx;
using frozen_sl::Potential;
using frozen_sl::TrigSeries;

inline std::uint64_t seed() {
  if (const char* s = std::getenv("FROZEN_SL_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240517u;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(seed());
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline cplx random_complex(double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  return {n(rng()), n(rng())};
}

/// Random point of the disk |z| <= r.
inline cplx random_in_disk(double r) {
  const double rad = r * std::sqrt(uniform(0.0, 1.0));
  const double phi = uniform(0.0, 2 * frozen_sl::pi);
  return std::polar(rad, phi);
}

inline Potential normalized(TrigSeries s, double norm = 1.0) {
  const double current = Potential(s).l2_norm();
  for (auto& c : s.cos_coeffs) c *= norm / current;
  for (auto& c : s.sin_coeffs) c *= norm / current;
  return Potential(std::move(s));
}

/// sum_{n=0}^{modes-1} c_n cos(n x), unit L2 norm.
inline Potential random_cosine(int modes = 6) {
  TrigSeries s;
  for (int n = 0; n < modes; ++n) s.cos_coeffs.push_back(random_complex());
  return normalized(std::move(s));
}

/// cos modes 0..5 and sin modes 1..5 with q(0) = q(pi) = 0, unit L2 norm.
/// Vanishing at the ends keeps W continuous, so its Fourier series (and
/// hence the reconstruction from finitely many eigenvalues) converges fast.
inline Potential random_smooth(int modes = 6) {
  TrigSeries s;
  for (int n = 0; n < modes; ++n) s.cos_coeffs.push_back(random_complex());
  s.sin_coeffs.push_back(0.0);
  for (int n = 1; n < modes; ++n) s.sin_coeffs.push_back(random_complex());
  cplx even = 0.0, odd = 0.0;
  for (int n = 0; n < modes; ++n) (n % 2 ? odd : even) += s.cos_coeffs[n];
  // q(0) = even + odd, q(pi) = even - odd.
  s.cos_coeffs[0] -= even;
  s.cos_coeffs[1] -= odd;
  return normalized(std::move(s));
}

/// Even about pi/2 (cos(2n x), sin((2n+1) x)) with q(0) = q(pi) = 0.
inline Potential random_even_about_half_pi(int modes = 4) {
  TrigSeries s;
  s.cos_coeffs.assign(2 * modes - 1, 0.0);
  s.sin_coeffs.assign(2 * modes, 0.0);
  cplx sum = 0.0;
  for (int n = 0; n < modes; ++n) {
    s.cos_coeffs[2 * n] = random_complex();
    sum += s.cos_coeffs[2 * n];
  }
  s.cos_coeffs[0] -= sum;
  for (int n = 0; n < modes - 1; ++n) s.sin_coeffs[2 * n + 1] = random_complex();
  return normalized(std::move(s));
}

/// Odd about pi/2 (cos((2n+1) x), sin(2n x)).
inline Potential random_odd_about_half_pi(int modes = 4) {
  TrigSeries s;
  s.cos_coeffs.assign(2 * modes, 0.0);
  s.sin_coeffs.assign(2 * modes + 1, 0.0);
  for (int n = 0; n < modes; ++n) {
    s.cos_coeffs[2 * n + 1] = random_complex();
    s.sin_coeffs[2 * n + 2] = random_complex();
  }
  return normalized(std::move(s));
}

/// Exact determinant of an integer matrix (fraction-free Bareiss elimination).
inline long long bareiss_det(std::vector<std::vector<long long>> a) {
  const int n = int(a.size());
  long long sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int swap = -1;
      for (int r = k + 1; r < n; ++r)
        if (a[r][k] != 0) swap = r;
      if (swap < 0) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// All (alpha, beta, k) with k in [k_lo, k_hi].
inline std::vector<frozen_sl::ProblemConfig> configs(int k_lo, int k_hi) {
  std::vector<frozen_sl::ProblemConfig> out;
  for (int alpha = 0; alpha <= 1; ++alpha)
    for (int beta = 0; beta <= 1; ++beta)
      for (int k = k_lo; k <= k_hi; ++k) out.emplace_back(alpha, beta, k);
  return out;
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace fixtures
