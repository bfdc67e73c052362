#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "frozen_sl/config.hpp"

namespace frozen_sl::quadrature {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre nodes by Newton iteration on P_n.
inline Rule gauss_legendre(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

inline const Rule& gl20() {
  static const Rule rule = gauss_legendre(20);
  return rule;
}

/// Composite 20-point Gauss-Legendre on [lo, hi] with the given number of
/// panels. `integrand(t)` returns a std::array of N values, summed
/// componentwise.
template <std::size_t N, class Integrand>
std::array<cplx, N> composite_gauss(const Integrand& integrand, double lo, double hi, int panels) {
  const Rule& rule = gl20();
  std::array<cplx, N> total{};
  const double width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double left = lo + p * width;
    const double half = 0.5 * width;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double t = left + half * (rule.nodes[q] + 1.0);
      const auto values = integrand(t);
      for (std::size_t c = 0; c < N; ++c) total[c] += (half * rule.weights[q]) * values[c];
    }
  }
  return total;
}

/// Composite Simpson with an even number of intervals.
template <std::size_t N, class Integrand>
std::array<cplx, N> composite_simpson(const Integrand& integrand, double lo, double hi, int intervals) {
  if (intervals % 2) ++intervals;
  const double step = (hi - lo) / intervals;
  std::array<cplx, N> total{};
  for (int i = 0; i <= intervals; ++i) {
    const double weight = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const auto values = integrand(lo + i * step);
    for (std::size_t c = 0; c < N; ++c) total[c] += weight * values[c];
  }
  for (auto& v : total) v *= step / 3.0;
  return total;
}

/// How a block-smooth function should be integrated: exactly evaluable
/// functions get Gauss-Legendre panels sized by their bandwidth, sampled
/// ones get Simpson on their block interpolant.
struct Hint {
  bool sampled = false;
  int samples_per_block = 0;
  double bandwidth = 0.0;
};

inline int gauss_panels(double omega, double bandwidth, double length) {
  return 1 + static_cast<int>(std::ceil((omega + bandwidth) * length / 5.0));
}

inline int simpson_intervals(double omega, int samples_per_block, double length) {
  const int by_oscillation = static_cast<int>(std::ceil(16.0 * omega * length / (2.0 * pi)));
  int n = std::max({4 * samples_per_block, by_oscillation, 8});
  return n + (n % 2);
}

/// Integrates kernel(t, f(t)) over blocks [first, last) of length `a`,
/// where f is evaluated block-locally via eval(block, u). `omega` is the
/// kernel's oscillation scale (|rho|).
template <std::size_t N, class Eval, class Kernel>
std::array<cplx, N> integrate_blocks(const Eval& eval, const Hint& hint, double a, int first, int last,
                                     double omega, const Kernel& kernel) {
  std::array<cplx, N> total{};
  for (int j = first; j < last; ++j) {
    const double lo = j * a;
    auto integrand = [&](double t) { return kernel(t, eval(j, t - lo)); };
    const auto part = hint.sampled
                          ? composite_simpson<N>(integrand, lo, lo + a,
                                                 simpson_intervals(omega, hint.samples_per_block, a))
                          : composite_gauss<N>(integrand, lo, lo + a, gauss_panels(omega, hint.bandwidth, a));
    for (std::size_t c = 0; c < N; ++c) total[c] += part[c];
  }
  return total;
}

}  // namespace frozen_sl::quadrature
