#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "frozen_sl/config.hpp"

namespace frozen_sl {

/// Uniform midpoint grid on (0, pi) split into k blocks ((j-1)a, ja) of
/// m samples each. Sample i sits at (i + 1/2) * pi / (m k), so no sample
/// lies on a block boundary and t -> c - t, t -> t + ja map samples to
/// samples exactly.
struct BlockGrid {
  int k = 1;
  int m = 1;

  BlockGrid() = default;
  BlockGrid(int k_, int m_) : k(k_), m(m_) {
    require(k_ >= 1, "grid needs at least one block");
    require(m_ >= 1, "grid needs at least one sample per block");
  }

  double a() const { return pi / k; }
  double h() const { return a() / m; }
  int size() const { return k * m; }
  double point(int i) const { return (i + 0.5) * h(); }
  double local_point(int i) const { return (i + 0.5) * h(); }

  friend bool operator==(const BlockGrid&, const BlockGrid&) = default;
};

/// Samples of a function on (0, k a) on a BlockGrid.
struct GridSamples {
  BlockGrid grid;
  std::vector<cplx> values;

  GridSamples() = default;
  GridSamples(BlockGrid g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
    require(static_cast<int>(values.size()) == grid.size(),
            "grid sample count must equal k * m");
  }
  explicit GridSamples(BlockGrid g) : grid(g), values(static_cast<std::size_t>(g.size())) {}

  std::span<const cplx> block(int j) const {
    return std::span<const cplx>(values).subspan(static_cast<std::size_t>(j) * grid.m, grid.m);
  }
  std::span<cplx> block(int j) {
    return std::span<cplx>(values).subspan(static_cast<std::size_t>(j) * grid.m, grid.m);
  }
  cplx& at(int j, int i) { return values[static_cast<std::size_t>(j) * grid.m + i]; }
  cplx at(int j, int i) const { return values[static_cast<std::size_t>(j) * grid.m + i]; }

  /// Sample of f(n a + sign * t_i), t_i the i-th local point of (0, a).
  /// Valid when the argument stays inside (0, k a).
  cplx shifted(int n, int sign, int i) const {
    if (sign > 0) return at(n, i);
    return at(n - 1, grid.m - 1 - i);
  }
};

/// Lagrange interpolation through the samples of one block, evaluated at
/// local coordinate u in [0, a]. Uses the 4 nearest samples (fewer if the
/// block is smaller) without crossing into neighbouring blocks; the half
/// cells at the block ends are extrapolated.
inline cplx interpolate_block(std::span<const cplx> samples, double h, double u) {
  const int m = static_cast<int>(samples.size());
  const int order = std::min(m, 4);
  const double s = u / h - 0.5;
  int first = static_cast<int>(std::floor(s)) - (order / 2 - 1);
  first = std::clamp(first, 0, m - order);
  cplx result = 0.0;
  for (int p = 0; p < order; ++p) {
    double weight = 1.0;
    for (int r = 0; r < order; ++r)
      if (r != p) weight *= (s - (first + r)) / double(p - r);
    result += weight * samples[first + p];
  }
  return result;
}

inline cplx interpolate(const GridSamples& f, int block, double u) {
  return interpolate_block(f.block(block), f.grid.h(), u);
}

/// Discrete L2(0, L) norm on a midpoint grid with spacing h.
inline double l2_norm(std::span<const cplx> values, double h) {
  double sum = 0.0;
  for (const cplx& v : values) sum += std::norm(v);
  return std::sqrt(sum * h);
}

}  // namespace frozen_sl
