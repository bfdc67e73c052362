#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "frozen_sl/potential.hpp"

namespace frozen_sl {

/// Coefficients of W in the complete system matching (alpha, beta):
/// cos(n t), n = 0, 1, ... when alpha == beta (coeffs[n]), and
/// sin((n - 1/2) t), n = 1, 2, ... otherwise (coeffs[n - 1]).
struct ModeSeries {
  std::vector<cplx> coeffs;
};

/// W evaluated lazily from a potential through the three-band formula.
/// Exact wherever the potential is (trigonometric series).
struct BandedW {
  std::shared_ptr<const Potential> q;
  ProblemConfig cfg;

  cplx eval_in_block(int block, double u) const {
    const int k = cfg.k();
    const double a = cfg.a();
    const double t = block * a + u;
    const Potential& p = *q;
    const double half_s = 0.5 * cfg.s();
    if (k == 1) {
      // 1x1 matrix 2 (-1)^{alpha(beta+1)} delta_{1,beta}; the sign is +1 whenever beta = 1.
      return cfg.beta() == 1 ? 2.0 * half_s * p(t) : cplx{0.0};
    }
    const int b = cfg.b(), c = cfg.c();
    if (block == 0) return half_s * (p((k - 1) * a + t) + double(b) * p((k - 1) * a - t));
    if (block < k - 1) return half_s * (double(c) * p((k + 1) * a - t) + double(b) * p((k - 1) * a - t));
    return half_s * double(c) * (p((k + 1) * a - t) + p(t - (k - 1) * a));
  }
};

/// The kernel W_{alpha,beta} on (0, pi) of the characteristic function.
class WFunction {
 public:
  using Rep = std::variant<GridSamples, ModeSeries, BandedW>;

  static WFunction from_modes(int alpha, int beta, std::vector<cplx> coeffs) {
    if (alpha == 0 && beta == 0 && !coeffs.empty()) {
      double scale = 0.0;
      for (const cplx& c : coeffs) scale = std::max(scale, std::abs(c));
      require(std::abs(coeffs[0]) <= 1e-10 * std::max(1.0, scale), "W_{0,0} must have zero mean");
      coeffs[0] = 0.0;
    }
    return WFunction(alpha, beta, ModeSeries{std::move(coeffs)});
  }

  static WFunction from_grid(int alpha, int beta, GridSamples samples) {
    WFunction w(alpha, beta, std::move(samples));
    if (alpha == 0 && beta == 0) {
      const double norm = w.l2_norm();
      require(std::abs(w.mean()) * std::sqrt(pi) <= 1e-8 * std::max(1.0, norm), "W_{0,0} must have zero mean");
    }
    return w;
  }

  static WFunction banded(const Potential& q, const ProblemConfig& cfg) {
    return WFunction(cfg.alpha(), cfg.beta(), BandedW{std::make_shared<const Potential>(q), cfg});
  }

  static WFunction zero(int alpha, int beta) { return WFunction(alpha, beta, ModeSeries{{}}); }

  int alpha() const { return alpha_; }
  int beta() const { return beta_; }
  const Rep& rep() const { return rep_; }
  bool is_grid() const { return std::holds_alternative<GridSamples>(rep_); }
  bool is_modes() const { return std::holds_alternative<ModeSeries>(rep_); }
  const GridSamples& grid() const { return std::get<GridSamples>(rep_); }
  const ModeSeries& modes() const { return std::get<ModeSeries>(rep_); }

  /// n-th basis function of the (alpha, beta) system.
  double basis(int index, double t) const {
    if (alpha_ == beta_) return std::cos(index * t);
    return std::sin((index + 0.5) * t);  // index = n - 1
  }

  /// Value at t in block `block` of a k-block partition of (0, pi).
  cplx eval_in_block(int k, int block, double u) const {
    const double a = pi / k;
    if (const auto* g = std::get_if<GridSamples>(&rep_)) {
      if (g->grid.k == k) return interpolate(*g, block, u);
      return (*this)(block * a + u);
    }
    if (const auto* b = std::get_if<BandedW>(&rep_)) {
      if (b->cfg.k() == k) return b->eval_in_block(block, u);
      return (*this)(block * a + u);
    }
    return (*this)(block * a + u);
  }

  cplx operator()(double t) const {
    if (const auto* g = std::get_if<GridSamples>(&rep_)) {
      const int block = std::clamp(static_cast<int>(t / g->grid.a()), 0, g->grid.k - 1);
      return interpolate(*g, block, t - block * g->grid.a());
    }
    if (const auto* b = std::get_if<BandedW>(&rep_)) {
      const double a = b->cfg.a();
      const int block = std::clamp(static_cast<int>(t / a), 0, b->cfg.k() - 1);
      return b->eval_in_block(block, t - block * a);
    }
    const auto& c = modes().coeffs;
    cplx value = 0.0;
    for (std::size_t n = 0; n < c.size(); ++n) value += c[n] * basis(static_cast<int>(n), t);
    return value;
  }

  quadrature::Hint quadrature_hint() const {
    if (const auto* g = std::get_if<GridSamples>(&rep_)) return {true, g->grid.m, 0.0};
    if (const auto* b = std::get_if<BandedW>(&rep_)) return b->q->quadrature_hint();
    return {false, 0, double(modes().coeffs.size())};
  }

  GridSamples sample(const BlockGrid& grid) const {
    if (const auto* g = std::get_if<GridSamples>(&rep_); g && g->grid == grid) return *g;
    GridSamples out(grid);
    for (int j = 0; j < grid.k; ++j)
      for (int i = 0; i < grid.m; ++i) out.at(j, i) = eval_in_block(grid.k, j, grid.local_point(i));
    return out;
  }

  /// Mean value over (0, pi).
  cplx mean() const {
    if (const auto* g = std::get_if<GridSamples>(&rep_)) {
      cplx sum = 0.0;
      for (const cplx& v : g->values) sum += v;
      return sum / double(g->grid.size());
    }
    if (const auto* m = std::get_if<ModeSeries>(&rep_)) {
      if (m->coeffs.empty()) return 0.0;
      if (alpha_ == beta_) return m->coeffs[0];
      cplx sum = 0.0;  // mean of sin((n-1/2)t) is 1 / (pi (n - 1/2))
      for (std::size_t n = 0; n < m->coeffs.size(); ++n) sum += m->coeffs[n] / (pi * (n + 0.5));
      return sum;
    }
    const auto& b = std::get<BandedW>(rep_);
    const auto total = quadrature::integrate_blocks<1>(
        [&](int j, double u) { return b.eval_in_block(j, u); }, quadrature_hint(), b.cfg.a(), 0, b.cfg.k(), 0.0,
        [](double, cplx f) { return std::array<cplx, 1>{f}; });
    return total[0] / pi;
  }

  double l2_norm() const {
    if (const auto* g = std::get_if<GridSamples>(&rep_)) return frozen_sl::l2_norm(g->values, g->grid.h());
    if (const auto* m = std::get_if<ModeSeries>(&rep_)) {
      double sum = 0.0;
      for (std::size_t n = 0; n < m->coeffs.size(); ++n)
        sum += std::norm(m->coeffs[n]) * ((alpha_ == beta_ && n == 0) ? pi : 0.5 * pi);
      return std::sqrt(sum);
    }
    const auto& b = std::get<BandedW>(rep_);
    const auto total = quadrature::integrate_blocks<1>(
        [&](int j, double u) { return b.eval_in_block(j, u); }, quadrature_hint(), b.cfg.a(), 0, b.cfg.k(), 0.0,
        [](double, cplx f) { return std::array<cplx, 1>{std::norm(f)}; });
    return std::sqrt(total[0].real());
  }

 private:
  WFunction(int alpha, int beta, Rep rep) : alpha_(alpha), beta_(beta), rep_(std::move(rep)) {
    require((alpha == 0 || alpha == 1) && (beta == 0 || beta == 1), "W tag must have alpha, beta in {0,1}");
  }

  int alpha_;
  int beta_;
  Rep rep_;
};

}  // namespace frozen_sl
