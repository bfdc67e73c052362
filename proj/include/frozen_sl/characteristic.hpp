#pragma once

// The characteristic function Delta_{alpha,beta}(lambda), rho^2 = lambda,
// evaluated two independent ways:
//  * through its kernel W:
//      alpha == beta: rho^{2 alpha} (sin(rho pi)/rho + int W(t) cos(rho t)/rho^2 dt)
//      alpha != beta: (-1)^alpha cos(rho pi) + int W(t) sin(rho t)/rho dt
//  * directly from q, as the 2x2 determinant of C, S (and derivatives) at
//    x = 0 and x = pi, where S(x) = sin(rho(x-a))/rho and
//    C(x) = cos(rho(x-a)) + int_a^x sin(rho(x-t))/rho q(t) dt.

#include <variant>

#include "frozen_sl/operators.hpp"
#include "frozen_sl/special.hpp"

namespace frozen_sl {

/// Delta and dDelta/drho at one rho.
struct DeltaRho {
  cplx value;
  cplx d_rho;
};

namespace detail {

using special::sinc_pi;
using special::sinc_pi_deriv;

inline DeltaRho delta_from_modes(const ModeSeries& modes, int alpha, int beta, cplx rho) {
  const auto& coeffs = modes.coeffs;
  cplx sum = 0.0, d_sum = 0.0;
  if (alpha == beta) {
    for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
      if (coeffs[idx] == 0.0) continue;
      const double n = double(idx);
      const cplx lo = rho - n, hi = rho + n;
      if (alpha == 0) {
        // (1/rho^2) int cos(nt) cos(rho t) dt = (-(-1)^n S(rho) + S(rho-n)/2 + S(rho+n)/2) / n^2
        const double sign = idx % 2 ? -1.0 : 1.0;
        const cplx v = (-sign * sinc_pi(rho) + 0.5 * (sinc_pi(lo) + sinc_pi(hi))) / (n * n);
        const cplx dv = (-sign * sinc_pi_deriv(rho) + 0.5 * (sinc_pi_deriv(lo) + sinc_pi_deriv(hi))) / (n * n);
        sum += coeffs[idx] * v;
        d_sum += coeffs[idx] * dv;
      } else {
        // int cos(nt) cos(rho t) dt = (S(rho-n) + S(rho+n)) / 2
        sum += coeffs[idx] * 0.5 * (sinc_pi(lo) + sinc_pi(hi));
        d_sum += coeffs[idx] * 0.5 * (sinc_pi_deriv(lo) + sinc_pi_deriv(hi));
      }
    }
  } else {
    for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
      if (coeffs[idx] == 0.0) continue;
      // (1/rho) int sin(nu t) sin(rho t) dt = (S(rho-nu) + S(rho+nu)) / (2 nu)
      const double nu = idx + 0.5;
      const cplx lo = rho - nu, hi = rho + nu;
      sum += coeffs[idx] * (sinc_pi(lo) + sinc_pi(hi)) / (2.0 * nu);
      d_sum += coeffs[idx] * (sinc_pi_deriv(lo) + sinc_pi_deriv(hi)) / (2.0 * nu);
    }
  }
  return {sum, d_sum};
}

// The W integral and its rho-derivative by quadrature over W's own blocks.
// For alpha = beta = 0 the kernel is (cos(rho t) - 1)/rho^2, W having zero mean.
inline DeltaRho delta_from_quadrature(const WFunction& w, cplx rho) {
  int k = 1;
  if (const auto* g = std::get_if<GridSamples>(&w.rep())) k = g->grid.k;
  if (const auto* b = std::get_if<BandedW>(&w.rep())) k = b->cfg.k();
  const double a = pi / k;
  auto eval = [&](int j, double u) { return w.eval_in_block(k, j, u); };
  const double omega = std::abs(rho);
  std::array<cplx, 2> r;
  if (w.alpha() == w.beta() && w.alpha() == 0) {
    r = quadrature::integrate_blocks<2>(eval, w.quadrature_hint(), a, 0, k, omega, [&](double t, cplx f) {
      const cplx z = rho * t;
      return std::array<cplx, 2>{-t * t * special::versinc(z) * f, -t * t * t * special::versinc_deriv(z) * f};
    });
  } else if (w.alpha() == w.beta()) {
    r = quadrature::integrate_blocks<2>(eval, w.quadrature_hint(), a, 0, k, omega, [&](double t, cplx f) {
      const cplx z = rho * t;
      return std::array<cplx, 2>{std::cos(z) * f, -t * std::sin(z) * f};
    });
  } else {
    r = quadrature::integrate_blocks<2>(eval, w.quadrature_hint(), a, 0, k, omega, [&](double t, cplx f) {
      const cplx z = rho * t;
      return std::array<cplx, 2>{t * special::sinc(z) * f, t * t * special::sinc_deriv(z) * f};
    });
  }
  return {r[0], r[1]};
}

}  // namespace detail

/// Delta(rho^2) and its rho-derivative from the kernel W.
inline DeltaRho eval_delta_W_rho(cplx rho, const WFunction& w) {
  const int alpha = w.alpha(), beta = w.beta();
  const DeltaRho integral = w.is_modes() ? detail::delta_from_modes(w.modes(), alpha, beta, rho)
                                         : detail::delta_from_quadrature(w, rho);
  if (alpha == beta && alpha == 0) {
    return {special::sinc_pi(rho) + integral.value, special::sinc_pi_deriv(rho) + integral.d_rho};
  }
  if (alpha == beta) {
    const cplx s = special::sinc_pi(rho), ds = special::sinc_pi_deriv(rho);
    return {rho * rho * s + integral.value, 2.0 * rho * s + rho * rho * ds + integral.d_rho};
  }
  const double sign = alpha ? -1.0 : 1.0;
  return {sign * special::cospi(rho) + integral.value, -sign * pi * special::sinpi(rho) + integral.d_rho};
}

inline cplx eval_delta_W(cplx lambda, const WFunction& w, const ProblemConfig& cfg) {
  require(w.alpha() == cfg.alpha() && w.beta() == cfg.beta(), "W tag does not match the configuration");
  return eval_delta_W_rho(std::sqrt(lambda), w).value;
}

/// Independent evaluation of Delta from q through the solutions C and S.
inline cplx eval_delta_direct(cplx lambda, const Potential& q, const ProblemConfig& cfg) {
  const int k = cfg.k();
  const double a = cfg.a();
  if (q.is_grid()) require(q.grid().grid.k == k, "grid potential must have k blocks");
  const cplx rho = std::sqrt(lambda);
  const double omega = std::abs(rho);
  auto eval = [&](int j, double u) { return q.eval_in_block(k, j, u); };

  // C(x) - cos(rho(x-a)) and C'(x) + rho sin(rho(x-a)) for x in {0, pi}.
  auto tails = [&](double x, int first, int last, double orientation) {
    const auto r = quadrature::integrate_blocks<2>(eval, q.quadrature_hint(), a, first, last, omega,
                                                   [&](double t, cplx f) {
                                                     const double d = x - t;
                                                     const cplx z = rho * d;
                                                     return std::array<cplx, 2>{d * special::sinc(z) * f, std::cos(z) * f};
                                                   });
    return std::array<cplx, 2>{orientation * r[0], orientation * r[1]};
  };
  const auto at0 = tails(0.0, 0, 1, -1.0);   // int_a^0 = -int_0^a
  const auto atpi = tails(pi, 1, k, 1.0);

  auto solutions = [&](double x, const std::array<cplx, 2>& tail) {
    const double u = x - a;
    const cplx z = rho * u;
    const cplx c = std::cos(z) + tail[0];
    const cplx dc = -rho * rho * u * special::sinc(z) + tail[1];
    const cplx s = u * special::sinc(z);
    const cplx ds = std::cos(z);
    return std::array<cplx, 4>{c, dc, s, ds};
  };
  const auto left = solutions(0.0, at0);
  const auto right = solutions(pi, atpi);
  const cplx c0 = left[cfg.alpha()], s0 = left[2 + cfg.alpha()];
  const cplx cpi = right[cfg.beta()], spi = right[2 + cfg.beta()];
  return c0 * spi - s0 * cpi;
}

/// Delta bound to its data: either a kernel W or (for the direct oracle) a
/// potential.
class CharacteristicFunction {
 public:
  enum class Method { KernelW, Direct };

  CharacteristicFunction(WFunction w, ProblemConfig cfg) : cfg_(cfg), source_(std::move(w)) {
    const auto& wf = std::get<WFunction>(source_);
    require(wf.alpha() == cfg.alpha() && wf.beta() == cfg.beta(), "W tag does not match the configuration");
  }
  CharacteristicFunction(Potential q, ProblemConfig cfg) : cfg_(cfg), source_(std::move(q)) {}

  const ProblemConfig& config() const { return cfg_; }
  Method method() const { return std::holds_alternative<WFunction>(source_) ? Method::KernelW : Method::Direct; }

  cplx operator()(cplx lambda) const {
    if (const auto* w = std::get_if<WFunction>(&source_)) return eval_delta_W_rho(std::sqrt(lambda), *w).value;
    return eval_delta_direct(lambda, std::get<Potential>(source_), cfg_);
  }

  DeltaRho at_rho(cplx rho) const {
    if (const auto* w = std::get_if<WFunction>(&source_)) return eval_delta_W_rho(rho, *w);
    const cplx h = 1e-6 * std::max(1.0, std::abs(rho));
    const auto f = [&](cplx r) { return (*this)(r * r); };
    return {f(rho), (f(rho + h) - f(rho - h)) / (2.0 * h)};
  }

 private:
  ProblemConfig cfg_;
  std::variant<WFunction, Potential> source_;
};

}  // namespace frozen_sl
