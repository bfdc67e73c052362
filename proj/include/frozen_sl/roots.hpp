#pragma once

// Complex root finding for entire functions: damped Newton, zero counting by
// the argument principle on rectangles, and bisection of a rectangle down to
// isolated zeros.

#include <cmath>
#include <optional>
#include <vector>

#include "frozen_sl/config.hpp"

namespace frozen_sl::roots {

struct NewtonResult {
  cplx root;
  int iterations = 0;
  bool converged = false;
};

/// Newton iteration z <- z - m f/f'. `fd(z)` returns {f, f'}; m is the
/// expected multiplicity of the zero. Steps longer than `max_step` are
/// shortened to it, which keeps the iterate inside the basin of the seed for
/// near-periodic functions.
template <class FD>
NewtonResult newton(const FD& fd, cplx z, double tol, int max_iter, double max_step, int multiplicity = 1) {
  NewtonResult out{z, 0, false};
  for (int it = 1; it <= max_iter; ++it) {
    const auto [f, df] = fd(z);
    out.iterations = it;
    if (f == 0.0) {
      out.root = z;
      out.converged = true;
      return out;
    }
    if (df == 0.0 || !std::isfinite(std::abs(f)) || !std::isfinite(std::abs(df))) break;
    cplx step = double(multiplicity) * f / df;
    if (std::abs(step) > max_step) step *= max_step / std::abs(step);
    z -= step;
    if (std::abs(step) <= tol * std::max(1.0, std::abs(z))) {
      out.root = z;
      out.converged = true;
      return out;
    }
  }
  out.root = z;
  return out;
}

/// Axis-aligned rectangle [lo.real, hi.real] x [lo.imag, hi.imag].
struct Rect {
  cplx lo;
  cplx hi;

  double width() const { return hi.real() - lo.real(); }
  double height() const { return hi.imag() - lo.imag(); }
  double diameter() const { return std::hypot(width(), height()); }
  cplx center() const { return 0.5 * (lo + hi); }
  bool contains(cplx z) const {
    return z.real() >= lo.real() && z.real() <= hi.real() && z.imag() >= lo.imag() && z.imag() <= hi.imag();
  }
};

namespace detail {

// Change of arg f along the segment [z0, z1], refined until every piece turns
// by less than pi/4. nullopt if f vanishes (numerically) on the segment.
template <class F>
std::optional<double> arg_change(const F& f, cplx z0, cplx z1, cplx f0, cplx f1, int depth) {
  if (f0 == 0.0 || f1 == 0.0) return std::nullopt;
  const double d = std::arg(f1 / f0);
  if (std::abs(d) < pi / 4) return d;
  if (depth > 40) return std::nullopt;
  const cplx zm = 0.5 * (z0 + z1);
  const cplx fm = f(zm);
  const auto left = arg_change(f, z0, zm, f0, fm, depth + 1);
  if (!left) return std::nullopt;
  const auto right = arg_change(f, zm, z1, fm, f1, depth + 1);
  if (!right) return std::nullopt;
  return *left + *right;
}

}  // namespace detail

/// Number of zeros of f inside r (with multiplicity), or nullopt when a zero
/// sits on (or too near) the boundary to decide.
template <class F>
std::optional<int> count_zeros(const F& f, const Rect& r, int samples_per_side = 32) {
  const cplx corners[5] = {r.lo, {r.hi.real(), r.lo.imag()}, r.hi, {r.lo.real(), r.hi.imag()}, r.lo};
  double total = 0.0;
  for (int side = 0; side < 4; ++side) {
    cplx z0 = corners[side];
    cplx f0 = f(z0);
    for (int s = 1; s <= samples_per_side; ++s) {
      const cplx z1 = corners[side] + (corners[side + 1] - corners[side]) * (double(s) / samples_per_side);
      const cplx f1 = f(z1);
      const auto d = detail::arg_change(f, z0, z1, f0, f1, 0);
      if (!d) return std::nullopt;
      total += *d;
      z0 = z1;
      f0 = f1;
    }
  }
  const double winding = total / (2 * pi);
  const long rounded = std::lround(winding);
  if (std::abs(winding - rounded) > 0.1) return std::nullopt;
  return static_cast<int>(rounded);
}

struct LocateOptions {
  double box_tol = 1e-3;     ///< rectangles smaller than this are polished by Newton
  double newton_tol = 1e-14;
  int max_iter = 60;
  int max_depth = 60;
};

namespace detail {

inline Rect jiggle(const Rect& r, int attempt) {
  const double e = 1e-3 * attempt * std::max(r.width(), r.height());
  return {r.lo - cplx{0.37 * e, 0.61 * e}, r.hi + cplx{0.53 * e, 0.29 * e}};
}

template <class F, class FD>
void locate(const F& f, const FD& fd, const Rect& r, int count, const LocateOptions& opts, int depth,
            std::vector<cplx>& out) {
  if (count <= 0) return;
  if (r.diameter() < opts.box_tol || depth >= opts.max_depth) {
    // A multiple zero stalls at ~eps^(1/count) without meeting the step
    // tolerance; the last iterate is still far better than the centre.
    const auto res = newton(fd, r.center(), opts.newton_tol, opts.max_iter, r.diameter(), count);
    const cplx z = res.converged || r.contains(res.root) ? res.root : r.center();
    for (int i = 0; i < count; ++i) out.push_back(z);
    return;
  }
  // Split the longer side slightly off-centre so that symmetric zero sets do
  // not land on the cut.
  for (double frac : {0.5 + 1.0 / 61, 0.5 - 1.0 / 37, 0.5 + 1.0 / 17}) {
    Rect a = r, b = r;
    if (r.width() >= r.height()) {
      const double x = r.lo.real() + frac * r.width();
      a.hi = {x, r.hi.imag()};
      b.lo = {x, r.lo.imag()};
    } else {
      const double y = r.lo.imag() + frac * r.height();
      a.hi = {r.hi.real(), y};
      b.lo = {r.lo.real(), y};
    }
    const auto ca = count_zeros(f, a);
    if (!ca || *ca < 0 || *ca > count) continue;
    locate(f, fd, a, *ca, opts, depth + 1, out);
    locate(f, fd, b, count - *ca, opts, depth + 1, out);
    return;
  }
  // Every cut passed through a zero: polish from the centre.
  const auto res = newton(fd, r.center(), opts.newton_tol, opts.max_iter, r.diameter());
  for (int i = 0; i < count; ++i) out.push_back(res.root);
}

}  // namespace detail

/// All zeros of f inside r, each repeated by multiplicity. If the boundary
/// passes through a zero the rectangle is enlarged slightly first.
template <class F, class FD>
std::vector<cplx> zeros_in_rect(const F& f, const FD& fd, Rect r, const LocateOptions& opts = {}) {
  std::optional<int> count;
  for (int attempt = 0; attempt < 6 && !count; ++attempt) {
    if (attempt) r = detail::jiggle(r, attempt);
    count = count_zeros(f, r);
  }
  std::vector<cplx> out;
  if (!count) return out;
  detail::locate(f, fd, r, *count, opts, 0, out);
  return out;
}

}  // namespace frozen_sl::roots
