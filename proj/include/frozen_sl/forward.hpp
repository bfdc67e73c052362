#pragma once

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "frozen_sl/characteristic.hpp"
#include "frozen_sl/roots.hpp"

namespace frozen_sl {

/// Eigenvalues lambda_1..lambda_N in index order, with the residuals
/// kappa_n = n (sqrt(lambda_n) - (n - (alpha+beta)/2)).
class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(ProblemConfig cfg, std::vector<cplx> values) : cfg_(cfg), values_(std::move(values)) {
    residuals_.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const cplx v = values_[i];
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        fail(ErrorKind::InvalidInput, "eigenvalue " + std::to_string(i + 1) + " is not finite");
      const int n = static_cast<int>(i) + 1;
      const double seed = asymptotic_rho(n, cfg_);
      cplx r = std::sqrt(v);
      if (std::abs(-r - seed) < std::abs(r - seed)) r = -r;
      residuals_.push_back(double(n) * (r - seed));
    }
  }

  const ProblemConfig& config() const { return cfg_; }
  const std::vector<cplx>& values() const { return values_; }
  const std::vector<cplx>& residuals() const { return residuals_; }
  std::size_t size() const { return values_.size(); }
  cplx operator[](std::size_t i) const { return values_[i]; }

  /// First n eigenvalues.
  Spectrum truncated(std::size_t n) const {
    return Spectrum(cfg_, std::vector<cplx>(values_.begin(), values_.begin() + std::min(n, values_.size())));
  }

  /// The unperturbed spectrum {(n - (alpha+beta)/2)^2}.
  static Spectrum asymptotic(const ProblemConfig& cfg, int n_max) {
    std::vector<cplx> v;
    for (int n = 1; n <= n_max; ++n) v.push_back(std::pow(asymptotic_rho(n, cfg), 2));
    return Spectrum(cfg, std::move(v));
  }

 private:
  ProblemConfig cfg_;
  std::vector<cplx> values_;
  std::vector<cplx> residuals_;
};

struct ResidualReport {
  std::vector<cplx> kappa;
  double tail_sum = 0.0;  ///< sum of |kappa_n|^2 over the last half
  bool l2_plausible = true;
};

/// Heuristic only: finitely many values cannot decide l2 membership.
inline ResidualReport spectrum_residuals(const Spectrum& spec, double bound = 1.0) {
  require(spec.size() > 0, "spectrum is empty");
  ResidualReport r{spec.residuals(), 0.0, true};
  for (std::size_t i = spec.size() / 2; i < spec.size(); ++i) r.tail_sum += std::norm(r.kappa[i]);
  r.l2_plausible = r.tail_sum < bound;
  return r;
}

struct SpectrumOptions {
  double tol_root = 1e-13;   ///< Newton stops when |step| <= tol_root * max(1, |rho|)
  int max_iter = 60;
  double tie_tol = 1e-6;     ///< roots closer than this in rho are checked for multiplicity
  bool verify = false;       ///< count zeros on a rectangle around the computed range
  bool parallel = false;
  int threads = 0;           ///< 0: hardware concurrency
  double left_extent = 100;  ///< fallback/verification contours reach Re lambda = -left_extent
};

struct RootInfo {
  int index = 0;
  int iterations = 0;
  bool fallback = false;      ///< found by contour search rather than Newton from the seed
  int multiplicity = 1;       ///< > 1 when recorded as part of a multiple root
  double residual = 0.0;      ///< |Delta(lambda_n)|
};

struct SpectrumReport {
  Spectrum spectrum;
  std::vector<RootInfo> roots;
  std::vector<std::string> notes;
  std::optional<int> verified_count;  ///< zeros found by the verification contour
  int expected_count = 0;             ///< stored eigenvalues inside that contour
};

namespace detail {

inline cplx principal_rho(cplx lambda) { return std::sqrt(lambda); }

// Delta as a function of lambda with its lambda-derivative. Near lambda = 0
// the rho-derivative form is singular, so a central difference is used.
inline std::pair<cplx, cplx> delta_lambda(const CharacteristicFunction& delta, cplx lambda) {
  const cplx rho = std::sqrt(lambda);
  if (std::abs(rho) > 1e-3) {
    const DeltaRho d = delta.at_rho(rho);
    return {d.value, d.d_rho / (2.0 * rho)};
  }
  const double h = 1e-5;
  const cplx v = delta(lambda);
  return {v, (delta(lambda + h) - delta(lambda - h)) / (2.0 * h)};
}

// Strips of the index and both neighbours: perturbed eigenvalues (double
// ones in particular) may sit past the edge of their own strip.
inline roots::Rect strip_rect(double seed, const SpectrumOptions& opts) {
  const double lo = seed - 1.5 <= 0.0 ? -opts.left_extent : (seed - 1.5) * (seed - 1.5);
  const double hi = (seed + 1.5) * (seed + 1.5);
  const double h = 4.0 * std::max(1.0, seed + 1.5);
  return {{lo, -h}, {hi, h}};
}

}  // namespace detail

/// Eigenvalues 1..n_max of the problem whose characteristic function is
/// `delta`. Each index is searched by Newton in rho from its asymptotic
/// seed (Newton in lambda for the seed rho = 0). Coinciding roots are
/// checked for multiplicity; surplus duplicates and failed runs fall back to
/// a contour search of the index's strip in the lambda-plane.
inline SpectrumReport compute_spectrum_report(const CharacteristicFunction& delta, int n_max,
                                              const SpectrumOptions& opts = {}) {
  require(n_max >= 1, "n_max must be >= 1");
  const ProblemConfig cfg = delta.config();
  std::vector<roots::NewtonResult> runs(n_max);

  auto run_one = [&](int n) {
    const double seed = asymptotic_rho(n, cfg);
    if (seed == 0.0) {
      auto fd = [&](cplx lam) { return detail::delta_lambda(delta, lam); };
      auto r = roots::newton(fd, 0.0, opts.tol_root, opts.max_iter, 0.25);
      r.root = detail::principal_rho(r.root);
      return r;
    }
    auto fd = [&](cplx rho) {
      const DeltaRho d = delta.at_rho(rho);
      return std::pair<cplx, cplx>{d.value, d.d_rho};
    };
    return roots::newton(fd, seed, opts.tol_root, opts.max_iter, 0.5);
  };

  if (opts.parallel && n_max > 1) {
    const unsigned hw = opts.threads > 0 ? unsigned(opts.threads) : std::max(1u, std::thread::hardware_concurrency());
    const unsigned count = std::min<unsigned>(hw, unsigned(n_max));
    std::atomic<int> next{1};
    std::mutex err_mutex;
    std::exception_ptr err;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < count; ++t) {
      pool.emplace_back([&] {
        for (int n = next++; n <= n_max; n = next++) {
          try {
            runs[n - 1] = run_one(n);
          } catch (...) {
            std::lock_guard lock(err_mutex);
            if (!err) err = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
  } else {
    for (int n = 1; n <= n_max; ++n) runs[n - 1] = run_one(n);
  }

  std::vector<cplx> rho(n_max);
  std::vector<bool> ok(n_max);
  std::vector<RootInfo> info(n_max);
  for (int i = 0; i < n_max; ++i) {
    rho[i] = detail::principal_rho(runs[i].root * runs[i].root);
    ok[i] = runs[i].converged;
    info[i].index = i + 1;
    info[i].iterations = runs[i].iterations;
  }

  std::vector<std::string> notes;
  auto lambda_fn = [&](cplx lam) { return delta(lam); };
  auto lambda_fd = [&](cplx lam) { return detail::delta_lambda(delta, lam); };

  // Ties: a group of indices landing on one root keeps as many members as the
  // root's multiplicity, nearest seeds first.
  for (int i = 0; i < n_max; ++i) {
    if (!ok[i]) continue;
    std::vector<int> group{i};
    for (int j = i + 1; j < n_max; ++j)
      if (ok[j] && std::abs(rho[j] - rho[i]) < opts.tie_tol) group.push_back(j);
    if (group.size() < 2) continue;
    const cplx lam = rho[i] * rho[i];
    const double half = std::max(1e-4, 10.0 * opts.tie_tol * std::max(1.0, std::abs(rho[i])));
    const roots::Rect box{lam - cplx{half, half}, lam + cplx{half, half}};
    const int mult = count_zeros(lambda_fn, box).value_or(1);
    std::sort(group.begin(), group.end(), [&](int x, int y) {
      return std::abs(rho[x] - asymptotic_rho(x + 1, cfg)) < std::abs(rho[y] - asymptotic_rho(y + 1, cfg));
    });
    for (std::size_t g = 0; g < group.size(); ++g) {
      if (int(g) < mult) {
        info[group[g]].multiplicity = std::min<int>(mult, int(group.size()));
      } else {
        ok[group[g]] = false;
      }
    }
    if (mult >= 2)
      notes.push_back("eigenvalue " + std::to_string(i + 1) + " recorded as a root of multiplicity " +
                      std::to_string(std::min<int>(mult, int(group.size()))));
  }

  // Fallback: contour search in each unresolved index's strip.
  for (int i = 0; i < n_max; ++i) {
    if (ok[i]) continue;
    const int n = i + 1;
    const double seed = asymptotic_rho(n, cfg);
    const auto found = roots::zeros_in_rect(lambda_fn, lambda_fd, detail::strip_rect(seed, opts));
    std::optional<cplx> best;
    int best_mult = 1;
    for (const cplx& lam : found) {
      const cplx r = detail::principal_rho(lam);
      int taken = 0;
      for (int j = 0; j < n_max; ++j)
        if (ok[j] && std::abs(rho[j] - r) < opts.tie_tol) ++taken;
      int available = 0;
      for (const cplx& other : found)
        if (std::abs(detail::principal_rho(other) - r) < opts.tie_tol) ++available;
      if (taken >= available) continue;
      if (!best || std::abs(r - seed) < std::abs(*best - seed)) {
        best = r;
        best_mult = available;
      }
    }
    if (!best)
      fail(ErrorKind::Numerical, "root search failed for eigenvalue index " + std::to_string(n) + " " + describe(cfg));
    rho[i] = *best;
    ok[i] = true;
    info[i].fallback = true;
    info[i].multiplicity = best_mult;
    notes.push_back("eigenvalue " + std::to_string(n) + " located by contour search");
  }

  std::vector<cplx> values(n_max);
  for (int i = 0; i < n_max; ++i) {
    values[i] = rho[i] * rho[i];
    info[i].residual = std::abs(delta(values[i]));
  }

  SpectrumReport report{Spectrum(cfg, values), std::move(info), std::move(notes), std::nullopt, 0};
  if (opts.verify) {
    const double top = asymptotic_rho(n_max, cfg) + 0.5;
    const double h = 4.0 * std::max(1.0, top);
    const roots::Rect big{{-opts.left_extent, -h}, {top * top, h}};
    report.verified_count = roots::count_zeros(lambda_fn, big, 256);
    for (const cplx& v : values) report.expected_count += big.contains(v) ? 1 : 0;
    if (!report.verified_count)
      report.notes.push_back("verification contour passed through a zero; count undecided");
    else if (*report.verified_count != report.expected_count)
      report.notes.push_back("verification: contour encloses " + std::to_string(*report.verified_count) +
                             " zeros but " + std::to_string(report.expected_count) + " eigenvalues were stored");
  }
  return report;
}

inline Spectrum compute_spectrum(const CharacteristicFunction& delta, int n_max, const SpectrumOptions& opts = {}) {
  return compute_spectrum_report(delta, n_max, opts).spectrum;
}

/// Kernel W of a potential: exact bands for series, grid samples for grids.
inline WFunction kernel_of(const Potential& q, const ProblemConfig& cfg) { return w_from_q_piecewise(q, cfg); }

inline Spectrum compute_spectrum(const Potential& q, const ProblemConfig& cfg, int n_max,
                                 const SpectrumOptions& opts = {}) {
  return compute_spectrum(CharacteristicFunction(kernel_of(q, cfg), cfg), n_max, opts);
}

inline Spectrum compute_spectrum(const WFunction& w, const ProblemConfig& cfg, int n_max,
                                 const SpectrumOptions& opts = {}) {
  return compute_spectrum(CharacteristicFunction(w, cfg), n_max, opts);
}

/// T_n = sum_{j=0}^{k-1} cos(2 j n a): k when k divides n, else 0.
inline int trig_sum_T(int n, const ProblemConfig& cfg) {
  require(n >= 0, "n must be non-negative");
  return n % cfg.k() == 0 ? cfg.k() : 0;
}

/// T_n = 1 + 2 sum_{j=1}^{[(k-1)/2]} cos(2 j n a) + ((1 + (-1)^k)/2) cos(pi n), summed.
inline double trig_sum_T_series(int n, const ProblemConfig& cfg) {
  const int k = cfg.k();
  double t = 1.0;
  for (int j = 1; j <= (k - 1) / 2; ++j) t += 2.0 * special::cospi(2.0 * j * n / k);
  if (k % 2 == 0) t += special::cospi(double(n));
  return t;
}

/// Indices (1-based) and forced values of the eigenvalues fixed by the
/// degenerate case, for indices up to n_max:
///   (i)   lambda_{kn} = (kn)^2
///   (ii)  lambda_{k(n-1/2)+1/2} = k^2 (n-1/2)^2
///   (iii) lambda_{k(n-1/2)+1} = k^2 (n-1/2)^2
inline std::vector<std::pair<int, double>> designated_eigenvalues(const ProblemConfig& cfg, int n_max) {
  const CaseLabel label = classify_case(cfg);
  if (!label.degenerate) fail(ErrorKind::InvalidInput, "configuration " + describe(cfg) + " is non-degenerate");
  const int k = cfg.k();
  std::vector<std::pair<int, double>> out;
  for (int n = 1;; ++n) {
    int index = 0;
    double value = 0.0;
    switch (label.group) {
      case CaseGroup::I:
        index = k * n;
        value = double(k * n) * double(k * n);
        break;
      case CaseGroup::II:  // k odd: k(n - 1/2) + 1/2 = kn - (k-1)/2
        index = k * n - (k - 1) / 2;
        value = k * k * (n - 0.5) * (n - 0.5);
        break;
      default:  // k even: k(n - 1/2) + 1 = kn - k/2 + 1
        index = k * n - k / 2 + 1;
        value = k * k * (n - 0.5) * (n - 0.5);
        break;
    }
    if (index > n_max) break;
    out.emplace_back(index, value);
  }
  return out;
}

struct DegenerationReport {
  std::vector<int> indices;
  std::vector<double> expected;
  std::vector<double> deviations;
  double max_deviation = 0.0;

  bool passes(double tol) const { return max_deviation <= tol; }
  /// Index of the worst designated eigenvalue, 0 when there is none.
  int worst_index() const {
    if (deviations.empty()) return 0;
    return indices[std::max_element(deviations.begin(), deviations.end()) - deviations.begin()];
  }
};

inline DegenerationReport check_degeneration_spectrum(const Spectrum& spec) {
  DegenerationReport r;
  for (const auto& [index, value] : designated_eigenvalues(spec.config(), int(spec.size()))) {
    const double dev = std::abs(spec[index - 1] - value);
    r.indices.push_back(index);
    r.expected.push_back(value);
    r.deviations.push_back(dev);
    r.max_deviation = std::max(r.max_deviation, dev);
  }
  return r;
}

}  // namespace frozen_sl
