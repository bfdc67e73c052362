#pragma once

#include <functional>
#include <optional>

#include "frozen_sl/forward.hpp"

namespace frozen_sl {

/// Delta rebuilt from eigenvalues as a Hadamard product. The first N values
/// enter explicitly, the rest are replaced by their asymptotic values
/// sigma_n^2 and summed in closed form:
///   prod_{n > M} (1 - rho^2 / (M' + n)^2) = Gamma(M'+1)^2 / (Gamma(M'+1-rho) Gamma(M'+1+rho)).
/// For alpha = beta = 1 the seed sigma_1 = 0 is the separate factor (lambda_1 - lambda).
class ReconstructedDelta {
 public:
  ReconstructedDelta(const Spectrum& spec, int n_explicit) : cfg_(spec.config()) {
    require(n_explicit >= 1 && n_explicit <= int(spec.size()), "n_explicit must lie in 1..spectrum size");
    values_.assign(spec.values().begin(), spec.values().begin() + n_explicit);
    for (int n = 1; n <= n_explicit; ++n) {
      const cplx kappa = spec.residuals()[n - 1];
      if (!std::isfinite(std::abs(kappa)))
        fail(ErrorKind::InvalidInput, "residual of eigenvalue " + std::to_string(n) + " is not finite");
    }
    check_tail_collisions();
    sign_ = 1;
    const double probe = -kProbeRadius * kProbeRadius;
    const cplx ratio = unperturbed(probe) / product(probe);
    sign_ = ratio.real() >= 0.0 ? 1 : -1;
  }

  const ProblemConfig& config() const { return cfg_; }
  int n_explicit() const { return int(values_.size()); }
  /// Normalization chosen so that Delta matches its leading term as lambda -> -inf.
  int sign() const { return sign_; }
  static constexpr double probe_radius() { return kProbeRadius; }

  cplx operator()(cplx lambda) const { return double(sign_) * product(lambda); }

  /// The zero-potential characteristic function: sin(rho pi)/rho, rho sin(rho pi)
  /// or (-1)^alpha cos(rho pi).
  cplx unperturbed(cplx lambda) const {
    const cplx rho = std::sqrt(lambda);
    if (cfg_.alpha() != cfg_.beta()) return (cfg_.alpha() ? -1.0 : 1.0) * special::cospi(rho);
    const cplx s = special::sinc_pi(rho);
    return cfg_.alpha() ? lambda * s : s;
  }

 private:
  static constexpr double kProbeRadius = 40.0;

  // Offset of the seeds: sigma_n = n - offset for the explicit factors.
  double offset() const { return 0.5 * (cfg_.alpha() + cfg_.beta()); }

  cplx product(cplx lambda) const {
    const cplx rho = std::sqrt(lambda);
    const int n_all = int(values_.size());
    cplx p = 1.0;
    int first = 1;
    if (cfg_.alpha() == 1 && cfg_.beta() == 1) {
      p = pi * (values_[0] - lambda);
      first = 2;
    } else if (cfg_.alpha() == 0 && cfg_.beta() == 0) {
      p = pi;
    }
    for (int n = first; n <= n_all; ++n) {
      const double sigma = n - offset();
      p *= (values_[n - 1] - lambda) / (sigma * sigma);
    }
    // Tail seeds are sigma_{n_all + j}, j >= 1, i.e. shift + j with shift = n_all - offset.
    const double shift = n_all - offset();
    if (p == 0.0) return p;
    const cplx lo = shift + 1.0 - rho, hi = shift + 1.0 + rho;
    if (is_pole(lo) || is_pole(hi)) return 0.0;
    const cplx log_tail = 2.0 * special::log_gamma(shift + 1.0) - special::log_gamma(lo) - special::log_gamma(hi);
    return p * std::exp(log_tail);
  }

  static bool is_pole(cplx z) { return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()); }

  void check_tail_collisions() const {
    const int n_all = int(values_.size());
    for (int n = 1; n <= n_all; ++n) {
      const cplx r = std::sqrt(values_[n - 1]);
      const int m = int(std::lround(std::abs(r.real()) + offset()));
      for (int cand = std::max(n_all + 1, m - 1); cand <= m + 1; ++cand) {
        const double sigma = cand - offset();
        if (std::abs(values_[n - 1] - sigma * sigma) <= 1e-12 * std::max(1.0, sigma * sigma))
          fail(ErrorKind::InvalidInput, "eigenvalue " + std::to_string(n) + " coincides with the asymptotic value of index " +
                                            std::to_string(cand) + " beyond the explicit range");
      }
    }
  }

  ProblemConfig cfg_;
  std::vector<cplx> values_;
  int sign_ = 1;
};

inline ReconstructedDelta reconstruct_delta(const Spectrum& spec, int n_explicit) {
  return ReconstructedDelta(spec, n_explicit);
}

/// Fourier coefficients of W from samples of Delta where the unperturbed
/// part vanishes:
///   alpha = beta = 0: a_n = (2/pi) n^2 Delta(n^2), a_0 = 0
///   alpha = beta = 1: a_n = (2/pi) Delta(n^2),     a_0 = Delta(0)/pi
///   alpha != beta:    b_n = (2/pi) nu Delta(nu^2), nu = n - 1/2
/// Works for any callable lambda -> Delta(lambda).
template <class Delta>
WFunction extract_W(const Delta& delta, const ProblemConfig& cfg, int n_modes) {
  require(n_modes >= 1, "n_modes must be >= 1");
  std::vector<cplx> c;
  if (cfg.alpha() == cfg.beta()) {
    c.assign(n_modes + 1, 0.0);
    if (cfg.alpha() == 1) c[0] = delta(cplx{0.0}) / pi;
    for (int n = 1; n <= n_modes; ++n) {
      const double n2 = double(n) * n;
      c[n] = (2.0 / pi) * (cfg.alpha() ? 1.0 : n2) * delta(cplx{n2});
    }
  } else {
    c.assign(n_modes, 0.0);
    for (int n = 1; n <= n_modes; ++n) {
      const double nu = n - 0.5;
      c[n - 1] = (2.0 / pi) * nu * delta(cplx{nu * nu});
    }
  }
  return WFunction::from_modes(cfg.alpha(), cfg.beta(), std::move(c));
}

/// Sets to zero the W coefficients that the degenerate case forces to vanish
/// (those sampled at the designated eigenvalues).
inline WFunction zero_designated_modes(const WFunction& w, const ProblemConfig& cfg) {
  auto c = w.modes().coeffs;
  const int k = cfg.k();
  switch (classify_case(cfg).group) {
    case CaseGroup::I:
      for (std::size_t n = k; n < c.size(); n += k) c[n] = 0.0;
      break;
    case CaseGroup::II:  // nu = k(n - 1/2), stored at nu - 1/2
      for (std::size_t idx = (k - 1) / 2; idx < c.size(); idx += k) c[idx] = 0.0;
      break;
    case CaseGroup::III:  // cos(k(n - 1/2) t)
      for (std::size_t n = k / 2; n < c.size(); n += k) c[n] = 0.0;
      break;
    default:
      fail(ErrorKind::InvalidInput, "configuration " + describe(cfg) + " is non-degenerate");
  }
  return WFunction::from_modes(cfg.alpha(), cfg.beta(), std::move(c));
}

struct InverseOptions {
  int n_explicit = 60;     ///< capped at the spectrum size
  int n_modes = 0;         ///< 0: n_explicit - 10 (at least half of n_explicit)
  int m = 128;             ///< samples per block of the output grid
  double deg_tol = 1e-6;   ///< absolute tolerance on designated eigenvalues
  double residual_tol = 1e-8;

  int resolved_explicit(const Spectrum& spec) const { return std::min<int>(n_explicit, int(spec.size())); }
  int resolved_modes(int explicit_count) const {
    if (n_modes > 0) return n_modes;
    return std::max(explicit_count - 10, (explicit_count + 1) / 2);
  }
};

struct InverseResult {
  Potential q;
  WFunction w = WFunction::zero(0, 0);
  int sign = 1;
  int n_explicit = 0;
  int n_modes = 0;
  std::optional<DegenerationReport> degeneration;
  double degeneration_residual_W = 0.0;
};

namespace detail {

inline InverseResult kernel_from_spectrum(const Spectrum& spec, const InverseOptions& opts) {
  InverseResult r;
  r.n_explicit = opts.resolved_explicit(spec);
  r.n_modes = opts.resolved_modes(r.n_explicit);
  const ReconstructedDelta delta(spec, r.n_explicit);
  r.sign = delta.sign();
  r.w = extract_W(delta, spec.config(), r.n_modes);
  return r;
}

}  // namespace detail

/// Non-degenerate inverse problem: Delta from the spectrum, W from Delta,
/// q from the main equation.
inline InverseResult algorithm_4_1_report(const Spectrum& spec, const InverseOptions& opts = {}) {
  const ProblemConfig& cfg = spec.config();
  if (is_degenerate(cfg))
    fail(ErrorKind::InvalidInput, "configuration " + describe(cfg) + " is degenerate; a restriction K is required");
  InverseResult r = detail::kernel_from_spectrum(spec, opts);
  r.q = solve_main_nondegenerate(r.w, cfg, BlockGrid(cfg.k(), opts.m));
  return r;
}

inline Potential algorithm_4_1(const Spectrum& spec, const InverseOptions& opts = {}) {
  return algorithm_4_1_report(spec, opts).q;
}

/// q from W block by block: the first-block solve on (0, a), then
///   (a, 2a):        q(x) = 2 (-1)^alpha W(pi + a - x) - q(2a - x)
///   (ja, (j+1)a):   q(x) = (-1)^alpha (2 W(pi + a - x) + q(x - 2a))
inline Potential algorithm_4_2(const WFunction& w, const ProblemConfig& cfg, const BlockGrid& grid) {
  const Block first = lemma32_reconstruct(w, cfg, grid);
  const GridSamples wg = w.sample(grid);
  const int k = cfg.k(), m = grid.m;
  const double sign = cfg.alpha() ? -1.0 : 1.0;
  GridSamples q(grid);
  std::copy(first.begin(), first.end(), q.block(0).begin());
  if (k > 1)
    for (int i = 0; i < m; ++i) q.at(1, i) = 2.0 * sign * wg.shifted(k, -1, i) - q.shifted(1, -1, i);
  for (int j = 2; j < k; ++j)
    for (int i = 0; i < m; ++i) q.at(j, i) = sign * (2.0 * wg.shifted(k + 1 - j, -1, i) + q.at(j - 2, i));
  return Potential(std::move(q));
}

/// Degenerate-case steps with restriction q(a - x) = K(q(a + x)):
///   q(a + x) = (I + K)^{-1}(-2 W(pi - x))
///   q(a - x) = -2 W(pi - x) - q(a + x)
///   q(x)     = -2 W(pi + a - x) + (-1)^alpha q(x - 2a),  x in (ja, (j+1)a), j >= 2
inline Potential degenerate_steps(const WFunction& w, const ProblemConfig& cfg, const FrozenK& K,
                                  const BlockGrid& grid) {
  require(cfg.k() > 1, "degenerate reconstruction needs k > 1");
  require(grid.k == cfg.k(), "grid must have k blocks");
  const GridSamples wg = w.sample(grid);
  const int k = cfg.k(), m = grid.m;
  Block rhs(m);
  for (int i = 0; i < m; ++i) rhs[i] = -2.0 * wg.shifted(k, -1, i);
  const Block after = K.solve_identity_plus(rhs);
  GridSamples q(grid);
  for (int i = 0; i < m; ++i) {
    q.at(1, i) = after[i];
    q.at(0, m - 1 - i) = rhs[i] - after[i];
  }
  const double sign = cfg.alpha() ? -1.0 : 1.0;
  for (int j = 2; j < k; ++j)
    for (int i = 0; i < m; ++i) q.at(j, i) = -2.0 * wg.shifted(k + 1 - j, -1, i) + sign * q.at(j - 2, i);
  return Potential(std::move(q));
}

inline InverseResult algorithm_4_3_report(const Spectrum& spec, const FrozenK& K, const InverseOptions& opts = {}) {
  const ProblemConfig& cfg = spec.config();
  if (!is_degenerate(cfg))
    fail(ErrorKind::InvalidInput, "configuration " + describe(cfg) + " is non-degenerate; use algorithm_4_1");
  require(cfg.k() > 1, "degenerate reconstruction needs k > 1");
  const int n_explicit = opts.resolved_explicit(spec);
  const DegenerationReport deg = check_degeneration_spectrum(spec.truncated(n_explicit));
  if (!deg.passes(opts.deg_tol))
    fail(ErrorKind::NotRealizable, "spectrum not realizable in degenerate case: eigenvalue " +
                                       std::to_string(deg.worst_index()) + " deviates from its forced value by " +
                                       std::to_string(deg.max_deviation));
  InverseResult r = detail::kernel_from_spectrum(spec, opts);
  r.w = zero_designated_modes(r.w, cfg);
  r.degeneration = deg;
  const BlockGrid grid(cfg.k(), opts.m);
  r.degeneration_residual_W = degeneration_residual_W(r.w, cfg, grid);
  const double scale = std::max(1.0, r.w.l2_norm());
  if (r.degeneration_residual_W > opts.residual_tol * scale)
    fail(ErrorKind::NotRealizable, "inconsistent spectrum/W for degenerate case");
  r.q = degenerate_steps(r.w, cfg, K, grid);
  return r;
}

inline Potential algorithm_4_3(const Spectrum& spec, const FrozenK& K, const InverseOptions& opts = {}) {
  return algorithm_4_3_report(spec, K, opts).q;
}

/// One potential per p via K(f) = p; each satisfies q(x) = p(a - x) on (0, a).
/// p is sampled at the local midpoints of a block of the output grid.
inline std::vector<Potential> isospectral_family(const Spectrum& spec, const std::vector<Block>& p_list,
                                                 const InverseOptions& opts = {}) {
  std::vector<Potential> out;
  if (p_list.empty()) return out;
  const InverseResult base = algorithm_4_3_report(spec, FrozenK::identity(), opts);
  const BlockGrid grid(spec.config().k(), opts.m);
  for (const Block& p : p_list) out.push_back(degenerate_steps(base.w, spec.config(), FrozenK::constant(p), grid));
  return out;
}

inline std::vector<Potential> isospectral_family(const Spectrum& spec,
                                                 const std::vector<std::function<cplx(double)>>& p_list,
                                                 const InverseOptions& opts = {}) {
  const BlockGrid grid(spec.config().k(), opts.m);
  std::vector<Block> sampled;
  for (const auto& p : p_list) {
    Block b(grid.m);
    for (int i = 0; i < grid.m; ++i) b[i] = p(grid.local_point(i));
    sampled.push_back(std::move(b));
  }
  return isospectral_family(spec, sampled, opts);
}

}  // namespace frozen_sl
