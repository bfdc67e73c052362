#pragma once

#include <complex>
#include <numbers>
#include <string>
#include <string_view>

#include "frozen_sl/errors.hpp"

namespace frozen_sl {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

/// Boundary orders (alpha, beta) and the integer k with frozen point a = pi/k.
///
/// Only k is stored; a() is derived so that a*k == pi holds in the
/// representation rather than up to rounding.
class ProblemConfig {
 public:
  ProblemConfig() = default;
  ProblemConfig(int alpha, int beta, int k) : alpha_(alpha), beta_(beta), k_(k) {
    require(alpha == 0 || alpha == 1, "alpha must be 0 or 1");
    require(beta == 0 || beta == 1, "beta must be 0 or 1");
    require(k >= 1, "k must be a positive integer");
  }

  int alpha() const noexcept { return alpha_; }
  int beta() const noexcept { return beta_; }
  int k() const noexcept { return k_; }
  double a() const noexcept { return pi / k_; }

  /// b = (-1)^(alpha+beta)
  int b() const noexcept { return (alpha_ + beta_) % 2 ? -1 : 1; }
  /// c = (-1)^(1+beta)
  int c() const noexcept { return beta_ ? 1 : -1; }
  /// (-1)^(alpha*beta), the prefactor sign of the main equation.
  int s() const noexcept { return alpha_ * beta_ ? -1 : 1; }
  bool equal_orders() const noexcept { return alpha_ == beta_; }

  friend bool operator==(const ProblemConfig&, const ProblemConfig&) = default;

 private:
  int alpha_ = 0;
  int beta_ = 0;
  int k_ = 1;
};

enum class CaseGroup { I = 1, II, III, IV, V, VI };

struct CaseLabel {
  CaseGroup group;
  bool degenerate;

  std::string_view name() const {
    constexpr std::string_view names[] = {"i", "ii", "iii", "iv", "v", "vi"};
    return names[static_cast<int>(group) - 1];
  }
};

/// Groups (i)-(iii) are degenerate (det A = 0), (iv)-(vi) are not.
inline CaseLabel classify_case(const ProblemConfig& cfg) {
  const bool k_odd = cfg.k() % 2 == 1;
  if (cfg.alpha() == 0 && cfg.beta() == 0) return {CaseGroup::I, true};
  if (cfg.alpha() == 0 && cfg.beta() == 1) return {CaseGroup::IV, false};
  if (cfg.alpha() == 1 && cfg.beta() == 0) return k_odd ? CaseLabel{CaseGroup::II, true} : CaseLabel{CaseGroup::V, false};
  return k_odd ? CaseLabel{CaseGroup::VI, false} : CaseLabel{CaseGroup::III, true};
}

inline bool is_degenerate(const ProblemConfig& cfg) { return classify_case(cfg).degenerate; }

/// Unperturbed square root of the n-th eigenvalue, n - (alpha+beta)/2.
inline double asymptotic_rho(int n, const ProblemConfig& cfg) {
  require(n >= 1, "eigenvalue index must be >= 1");
  return n - 0.5 * (cfg.alpha() + cfg.beta());
}

inline std::string describe(const ProblemConfig& cfg) {
  return "(alpha=" + std::to_string(cfg.alpha()) + ", beta=" + std::to_string(cfg.beta()) +
         ", k=" + std::to_string(cfg.k()) + ")";
}

}  // namespace frozen_sl
