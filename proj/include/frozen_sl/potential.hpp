#pragma once

#include <cmath>
#include <variant>
#include <vector>

#include "frozen_sl/grid.hpp"
#include "frozen_sl/quadrature.hpp"

namespace frozen_sl {

/// q(x) = sum_n cos_coeffs[n] cos(n x) + sum_n sin_coeffs[n] sin(n x).
/// sin_coeffs[0] is ignored. A pure cosine series is the common case.
struct TrigSeries {
  std::vector<cplx> cos_coeffs;
  std::vector<cplx> sin_coeffs;

  cplx operator()(double x) const {
    cplx value = 0.0;
    for (std::size_t n = 0; n < cos_coeffs.size(); ++n) value += cos_coeffs[n] * std::cos(double(n) * x);
    for (std::size_t n = 1; n < sin_coeffs.size(); ++n) value += sin_coeffs[n] * std::sin(double(n) * x);
    return value;
  }

  /// Highest frequency present.
  int bandwidth() const {
    const std::size_t n = std::max(cos_coeffs.size(), sin_coeffs.size());
    return n == 0 ? 0 : static_cast<int>(n) - 1;
  }
};

/// Complex potential q on (0, pi): either grid samples or a finite
/// trigonometric series. Immutable once built.
class Potential {
 public:
  using Rep = std::variant<GridSamples, TrigSeries>;

  Potential() : rep_(TrigSeries{}) {}
  explicit Potential(GridSamples samples) : rep_(std::move(samples)) {}
  explicit Potential(TrigSeries series) : rep_(std::move(series)) {}

  static Potential zero() { return Potential(TrigSeries{{0.0}, {}}); }
  static Potential constant(cplx value) { return Potential(TrigSeries{{value}, {}}); }
  static Potential fourier_cos(std::vector<cplx> coeffs) { return Potential(TrigSeries{std::move(coeffs), {}}); }

  /// Samples of f on the midpoint grid; grid.k * grid.m points.
  template <class F>
  static Potential sampled(BlockGrid grid, const F& f) {
    GridSamples samples(grid);
    for (int i = 0; i < grid.size(); ++i) samples.values[i] = f(grid.point(i));
    return Potential(std::move(samples));
  }

  const Rep& rep() const { return rep_; }
  bool is_grid() const { return std::holds_alternative<GridSamples>(rep_); }
  const GridSamples& grid() const { return std::get<GridSamples>(rep_); }
  const TrigSeries& series() const { return std::get<TrigSeries>(rep_); }

  /// Value at x in block `block` of a k-block partition, u = x - block * pi/k.
  /// Grid potentials must have been sampled with the same k.
  cplx eval_in_block(int k, int block, double u) const {
    if (const auto* g = std::get_if<GridSamples>(&rep_)) {
      require(g->grid.k == k, "grid potential resolution does not match k");
      return interpolate(*g, block, u);
    }
    return series()(block * pi / k + u);
  }

  /// Value at x in (0, pi). Grid potentials interpolate inside the block
  /// containing x.
  cplx operator()(double x) const {
    if (const auto* g = std::get_if<GridSamples>(&rep_)) {
      const int block = std::clamp(static_cast<int>(x / g->grid.a()), 0, g->grid.k - 1);
      return interpolate(*g, block, x - block * g->grid.a());
    }
    return series()(x);
  }

  quadrature::Hint quadrature_hint() const {
    if (const auto* g = std::get_if<GridSamples>(&rep_)) return {true, g->grid.m, 0.0};
    return {false, 0, double(series().bandwidth())};
  }

  /// Samples on `grid`. A grid potential on the same grid is returned as is.
  GridSamples sample(const BlockGrid& grid) const {
    if (const auto* g = std::get_if<GridSamples>(&rep_); g && g->grid == grid) return *g;
    GridSamples out(grid);
    for (int j = 0; j < grid.k; ++j)
      for (int i = 0; i < grid.m; ++i) out.at(j, i) = eval_in_block(grid.k, j, grid.local_point(i));
    return out;
  }

  /// Cosine coefficients c_0..c_n (c_0 the mean). Grid potentials use the
  /// midpoint rule, which is exact for cosine series of degree below the
  /// total sample count.
  std::vector<cplx> fourier_cos(int n_max) const {
    std::vector<cplx> coeffs(static_cast<std::size_t>(n_max) + 1);
    if (const auto* g = std::get_if<GridSamples>(&rep_)) {
      const double h = g->grid.h();
      for (int n = 0; n <= n_max; ++n) {
        cplx sum = 0.0;
        for (int i = 0; i < g->grid.size(); ++i) sum += g->values[i] * std::cos(n * g->grid.point(i));
        coeffs[n] = sum * h * (n == 0 ? 1.0 : 2.0) / pi;
      }
      return coeffs;
    }
    const TrigSeries& s = series();
    if (s.sin_coeffs.size() > 1) {
      // sin(jx) is not orthogonal to cos(nx) on (0, pi); project numerically.
      const BlockGrid fine(1, 8 * (std::max(n_max, s.bandwidth()) + 1));
      return Potential(sample(fine)).fourier_cos(n_max);
    }
    for (int n = 0; n <= n_max && n < static_cast<int>(s.cos_coeffs.size()); ++n) coeffs[n] = s.cos_coeffs[n];
    return coeffs;
  }

  /// L2(0, pi) norm.
  double l2_norm() const {
    if (const auto* g = std::get_if<GridSamples>(&rep_)) return frozen_sl::l2_norm(g->values, g->grid.h());
    const auto sq = quadrature::composite_gauss<1>(
        [&](double x) { return std::array<cplx, 1>{std::norm(series()(x))}; }, 0.0, pi,
        2 + series().bandwidth() / 4);
    return std::sqrt(sq[0].real());
  }

 private:
  Rep rep_;
};

/// Relative L2(0, pi) distance of `estimate` from `reference`, both sampled
/// on `grid`.
inline double relative_l2_error(const Potential& estimate, const Potential& reference, const BlockGrid& grid) {
  const GridSamples e = estimate.sample(grid);
  const GridSamples r = reference.sample(grid);
  double diff = 0.0, ref = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    diff += std::norm(e.values[i] - r.values[i]);
    ref += std::norm(r.values[i]);
  }
  return ref == 0.0 ? std::sqrt(diff * grid.h()) : std::sqrt(diff / ref);
}

}  // namespace frozen_sl
