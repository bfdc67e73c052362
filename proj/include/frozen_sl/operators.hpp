#pragma once

// Shift/involution operators R_m, Q_m, the tridiagonal matrix A_{alpha,beta}
// and the main equation W = (-1)^{alpha beta}/2 Q^{-1} A R q in both
// directions. Everything here works on midpoint grids, where the operators
// are exact index permutations.

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "frozen_sl/frozen_k.hpp"
#include "frozen_sl/wfunction.hpp"

namespace frozen_sl {

using Block = std::vector<cplx>;

/// k functions on (0, a), all sampled at the same m local midpoints.
struct StackedVector {
  std::vector<Block> blocks;

  int size() const { return static_cast<int>(blocks.size()); }
};

namespace detail {

inline void check_grid(const GridSamples& f, const ProblemConfig& cfg) {
  require(f.grid.k == cfg.k(), "grid has " + std::to_string(f.grid.k) + " blocks but k = " + std::to_string(cfg.k()));
}

inline void check_index(int m, const ProblemConfig& cfg) {
  require(m >= 1 && m <= cfg.k(), "operator index must lie in 1..k");
}

// Copies block `src` of f into out, reversed when `reflect` is set.
inline Block take_block(const GridSamples& f, int src, bool reflect) {
  const auto b = f.block(src);
  Block out(b.begin(), b.end());
  if (reflect) std::reverse(out.begin(), out.end());
  return out;
}

inline void put_block(GridSamples& f, int dst, const Block& values, bool reflect) {
  require(static_cast<int>(values.size()) == f.grid.m, "block length does not match the grid");
  auto b = f.block(dst);
  if (reflect)
    std::reverse_copy(values.begin(), values.end(), b.begin());
  else
    std::copy(values.begin(), values.end(), b.begin());
}

}  // namespace detail

/// R_m f(t): f(t + (k-m)a) for odd m, f((k-m+1)a - t) for even m.
inline Block apply_Rm(const GridSamples& f, int m, const ProblemConfig& cfg) {
  detail::check_grid(f, cfg);
  detail::check_index(m, cfg);
  return detail::take_block(f, cfg.k() - m, m % 2 == 0);
}

/// Q_m f(t): f(t + (m-1)a) for odd m, f(ma - t) for even m.
inline Block apply_Qm(const GridSamples& f, int m, const ProblemConfig& cfg) {
  detail::check_grid(f, cfg);
  detail::check_index(m, cfg);
  return detail::take_block(f, m - 1, m % 2 == 0);
}

inline StackedVector apply_R(const GridSamples& f, const ProblemConfig& cfg) {
  StackedVector v;
  for (int m = 1; m <= cfg.k(); ++m) v.blocks.push_back(apply_Rm(f, m, cfg));
  return v;
}

inline StackedVector apply_Q(const GridSamples& f, const ProblemConfig& cfg) {
  StackedVector v;
  for (int m = 1; m <= cfg.k(); ++m) v.blocks.push_back(apply_Qm(f, m, cfg));
  return v;
}

inline GridSamples invert_R(const StackedVector& v, const ProblemConfig& cfg) {
  require(v.size() == cfg.k(), "stacked vector must have k blocks");
  GridSamples f(BlockGrid(cfg.k(), static_cast<int>(v.blocks.front().size())));
  for (int m = 1; m <= cfg.k(); ++m) detail::put_block(f, cfg.k() - m, v.blocks[m - 1], m % 2 == 0);
  return f;
}

inline GridSamples invert_Q(const StackedVector& v, const ProblemConfig& cfg) {
  require(v.size() == cfg.k(), "stacked vector must have k blocks");
  GridSamples f(BlockGrid(cfg.k(), static_cast<int>(v.blocks.front().size())));
  for (int m = 1; m <= cfg.k(); ++m) detail::put_block(f, m - 1, v.blocks[m - 1], m % 2 == 0);
  return f;
}

/// Integer matrix A_{alpha,beta}. For k > 1 it is tridiagonal with
/// A[0][0] = 1, A[k-1][k-1] = c, b above and c below the diagonal; for k = 1
/// it is the scalar 2 (-1)^{alpha(beta+1)} delta_{1,beta}.
struct AMatrix {
  int k = 1;
  int b = 1;
  int c = 1;
  std::vector<int> entries;  // row-major k x k

  int operator()(int row, int col) const { return entries[static_cast<std::size_t>(row) * k + col]; }

  Eigen::MatrixXcd dense() const {
    Eigen::MatrixXcd m(k, k);
    for (int r = 0; r < k; ++r)
      for (int col = 0; col < k; ++col) m(r, col) = double((*this)(r, col));
    return m;
  }
};

inline AMatrix build_A(const ProblemConfig& cfg) {
  AMatrix A;
  A.k = cfg.k();
  A.b = cfg.b();
  A.c = cfg.c();
  A.entries.assign(static_cast<std::size_t>(A.k) * A.k, 0);
  if (A.k == 1) {
    const int sign = (cfg.alpha() * (cfg.beta() + 1)) % 2 ? -1 : 1;
    A.entries[0] = cfg.beta() == 1 ? 2 * sign : 0;
    return A;
  }
  auto at = [&](int r, int c) -> int& { return A.entries[static_cast<std::size_t>(r) * A.k + c]; };
  at(0, 0) = 1;
  at(A.k - 1, A.k - 1) = A.c;
  for (int i = 0; i + 1 < A.k; ++i) {
    at(i, i + 1) = A.b;
    at(i + 1, i) = A.c;
  }
  return A;
}

/// det A in closed form: (-bc)^{(k-1)/2}(1+c) for odd k,
/// (-b)^{k/2-1} c^{k/2} (1-b) for even k.
inline long long det_A_closed(const ProblemConfig& cfg) {
  const int k = cfg.k();
  if (k == 1) return build_A(cfg).entries[0];
  const long long b = cfg.b(), c = cfg.c();
  auto ipow = [](long long base, int e) {
    long long r = 1;
    while (e-- > 0) r *= base;
    return r;
  };
  if (k % 2) return ipow(-b * c, (k - 1) / 2) * (1 + c);
  return ipow(-b, k / 2 - 1) * ipow(c, k / 2) * (1 - b);
}

/// W = (s/2) Q^{-1} A R q on the grid of q.
inline GridSamples w_from_q_matrix(const GridSamples& q, const ProblemConfig& cfg) {
  const StackedVector rq = apply_R(q, cfg);
  const AMatrix A = build_A(cfg);
  const int k = cfg.k(), m = q.grid.m;
  StackedVector y;
  y.blocks.assign(k, Block(m, 0.0));
  const double half_s = 0.5 * cfg.s();
  for (int r = 0; r < k; ++r)
    for (int col = 0; col < k; ++col) {
      const int entry = A(r, col);
      if (entry == 0) continue;
      for (int i = 0; i < m; ++i) y.blocks[r][i] += half_s * entry * rq.blocks[col][i];
    }
  return invert_Q(y, cfg);
}

inline WFunction w_from_q_matrix(const Potential& q, const ProblemConfig& cfg, const BlockGrid& grid) {
  require(grid.k == cfg.k(), "grid must have k blocks");
  return WFunction::from_grid(cfg.alpha(), cfg.beta(), w_from_q_matrix(q.sample(grid), cfg));
}

/// W from the three-band formula
///   q((k-1)a+t) + b q((k-1)a-t)         on (0, a),
///   c q((k+1)a-t) + b q((k-1)a-t)       on (a, (k-1)a),
///   c (q((k+1)a-t) + q(t-(k-1)a))       on ((k-1)a, pi),
/// all times (-1)^{alpha beta}/2, evaluated sample by sample.
inline GridSamples w_from_q_piecewise(const GridSamples& q, const ProblemConfig& cfg) {
  detail::check_grid(q, cfg);
  const int k = cfg.k(), m = q.grid.m;
  const double b = cfg.b(), c = cfg.c(), half_s = 0.5 * cfg.s();
  GridSamples w(q.grid);
  if (k == 1) {
    for (int i = 0; i < m; ++i) w.at(0, i) = cfg.beta() == 1 ? 2.0 * half_s * q.at(0, i) : cplx{0.0};
    return w;
  }
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < m; ++i) {
      // t = j a + u_i; q(n a + sign t) is sample shifted(n + sign j, sign, i).
      auto plus = [&](int n) { return q.shifted(n + j, +1, i); };    // q(n a + t)
      auto minus = [&](int n) { return q.shifted(n - j, -1, i); };   // q(n a - t)
      auto shifted_back = [&](int n) { return q.shifted(j - n, +1, i); };  // q(t - n a)
      cplx value;
      if (j == 0)
        value = plus(k - 1) + b * minus(k - 1);
      else if (j < k - 1)
        value = c * minus(k + 1) + b * minus(k - 1);
      else
        value = c * (minus(k + 1) + shifted_back(k - 1));
      w.at(j, i) = half_s * value;
    }
  return w;
}

/// Banded (exact, lazily evaluated) W for series potentials, grid W for
/// grid potentials.
inline WFunction w_from_q_piecewise(const Potential& q, const ProblemConfig& cfg) {
  if (q.is_grid()) return WFunction::from_grid(cfg.alpha(), cfg.beta(), w_from_q_piecewise(q.grid(), cfg));
  return WFunction::banded(q, cfg);
}

/// Y = 2 (-1)^{alpha beta} Q W on the grid, so that Y = A R q.
inline StackedVector main_rhs(const WFunction& w, const ProblemConfig& cfg, const BlockGrid& grid) {
  require(grid.k == cfg.k(), "grid must have k blocks");
  require(w.alpha() == cfg.alpha() && w.beta() == cfg.beta(), "W tag does not match the configuration");
  StackedVector y = apply_Q(w.sample(grid), cfg);
  for (auto& block : y.blocks)
    for (auto& v : block) v *= 2.0 * cfg.s();
  return y;
}

/// q = R^{-1} A^{-1} 2(-1)^{alpha beta} Q W. The matrix is factored once;
/// the grid points decouple.
inline Potential solve_main_nondegenerate(const WFunction& w, const ProblemConfig& cfg, const BlockGrid& grid) {
  if (is_degenerate(cfg))
    fail(ErrorKind::InvalidInput, "configuration " + describe(cfg) + " is degenerate; use solve_main_degenerate");
  const StackedVector y = main_rhs(w, cfg, grid);
  const int k = cfg.k(), m = grid.m;
  Eigen::MatrixXcd rhs(k, m);
  for (int r = 0; r < k; ++r)
    for (int i = 0; i < m; ++i) rhs(r, i) = y.blocks[r][i];
  const Eigen::MatrixXcd x = build_A(cfg).dense().partialPivLu().solve(rhs);
  StackedVector rq;
  rq.blocks.assign(k, Block(m));
  for (int r = 0; r < k; ++r)
    for (int i = 0; i < m; ++i) rq.blocks[r][i] = x(r, i);
  return Potential(invert_R(rq, cfg));
}

/// Left side of the degeneration identity of the case, pointwise on (0, a):
///   (i)   sum_{j=0}^{[(k-1)/2]} W(2ja+t) + sum_{j=1}^{[k/2]} W(2ja-t)
///   (ii)  sum_{j=0}^{(k-1)/2} (-1)^j W(2ja+t) - sum_{j=1}^{(k-1)/2} (-1)^j W(2ja-t)
///   (iii) sum_{j=0}^{k/2-1} (-1)^j W(2ja+t) + sum_{j=1}^{k/2} (-1)^j W(2ja-t)
inline Block degeneration_identity(const GridSamples& w, const ProblemConfig& cfg) {
  const CaseLabel label = classify_case(cfg);
  if (!label.degenerate)
    fail(ErrorKind::InvalidInput, "degeneration identity requested for non-degenerate " + describe(cfg));
  detail::check_grid(w, cfg);
  const int k = cfg.k(), m = w.grid.m;
  auto sgn = [](int j) { return j % 2 ? -1.0 : 1.0; };
  Block out(m, 0.0);
  for (int i = 0; i < m; ++i) {
    cplx sum = 0.0;
    switch (label.group) {
      case CaseGroup::I:
        for (int j = 0; j <= (k - 1) / 2; ++j) sum += w.shifted(2 * j, +1, i);
        for (int j = 1; j <= k / 2; ++j) sum += w.shifted(2 * j, -1, i);
        break;
      case CaseGroup::II:
        for (int j = 0; j <= (k - 1) / 2; ++j) sum += sgn(j) * w.shifted(2 * j, +1, i);
        for (int j = 1; j <= (k - 1) / 2; ++j) sum -= sgn(j) * w.shifted(2 * j, -1, i);
        break;
      default:
        for (int j = 0; j <= k / 2 - 1; ++j) sum += sgn(j) * w.shifted(2 * j, +1, i);
        for (int j = 1; j <= k / 2; ++j) sum += sgn(j) * w.shifted(2 * j, -1, i);
        break;
    }
    out[i] = sum;
  }
  return out;
}

/// L2(0, a) norm of the degeneration identity's left side.
inline double degeneration_residual_W(const WFunction& w, const ProblemConfig& cfg, const BlockGrid& grid) {
  require(grid.k == cfg.k(), "grid must have k blocks");
  const Block lhs = degeneration_identity(w.sample(grid), cfg);
  return l2_norm(lhs, grid.h());
}

struct DegenerateSolveOptions {
  /// Allowed degeneration residual relative to ||W||.
  double residual_tol = 1e-8;
};

namespace detail {

inline void check_degenerate_solvable(const WFunction& w, const ProblemConfig& cfg, const BlockGrid& grid,
                                      const DegenerateSolveOptions& opts) {
  if (!is_degenerate(cfg))
    fail(ErrorKind::InvalidInput, "configuration " + describe(cfg) + " is non-degenerate; use solve_main_nondegenerate");
  require(cfg.k() > 1, "degenerate reconstruction needs k > 1");
  const GridSamples wg = w.sample(grid);
  const double residual = l2_norm(degeneration_identity(wg, cfg), grid.h());
  const double scale = l2_norm(wg.values, grid.h());
  if (residual > opts.residual_tol * std::max(1.0, scale))
    fail(ErrorKind::NotRealizable, "inconsistent spectrum/W for degenerate case: degeneration residual " +
                                       std::to_string(residual));
}

// Backward recurrence R_j q = c Y_{j+1} - b c R_{j+2} q, j = k-2..1, from the
// rows 2..k-1 of Y = A R q.
inline void backward_recurrence(StackedVector& rq, const StackedVector& y, const ProblemConfig& cfg) {
  const int k = cfg.k();
  const double b = cfg.b(), c = cfg.c();
  for (int j = k - 2; j >= 1; --j) {
    Block& x = rq.blocks[j - 1];
    const Block& y_next = y.blocks[j];
    const Block& x_skip = rq.blocks[j + 1];
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = c * y_next[i] - b * c * x_skip[i];
  }
}

}  // namespace detail

/// Degenerate main equation under q(a - t) = K(q(a + t)). The last row gives
/// q(a+t) + q(a-t) = 2 s c W(pi - t), fixed through (I + K)^{-1}; the
/// remaining blocks follow from the backward recurrence.
inline Potential solve_main_degenerate(const WFunction& w, const ProblemConfig& cfg, const FrozenK& K,
                                       const BlockGrid& grid, const DegenerateSolveOptions& opts = {}) {
  detail::check_degenerate_solvable(w, cfg, grid, opts);
  const int k = cfg.k(), m = grid.m;
  const GridSamples wg = w.sample(grid);
  const StackedVector y = main_rhs(w, cfg, grid);

  Block rhs(m);
  for (int i = 0; i < m; ++i) rhs[i] = 2.0 * cfg.s() * cfg.c() * wg.shifted(k, -1, i);  // W(pi - t)
  const Block after = K.solve_identity_plus(rhs);  // q(a + t)
  Block before(m);                                  // q(a - t)
  for (int i = 0; i < m; ++i) before[i] = rhs[i] - after[i];

  GridSamples q(grid);
  for (int i = 0; i < m; ++i) {
    q.at(1, i) = after[i];
    q.at(0, m - 1 - i) = before[i];
  }
  StackedVector rq;
  rq.blocks.assign(k, Block(m));
  rq.blocks[k - 2] = apply_Rm(q, k - 1, cfg);
  rq.blocks[k - 1] = apply_Rm(q, k, cfg);
  detail::backward_recurrence(rq, y, cfg);
  return Potential(invert_R(rq, cfg));
}

/// q prescribed on one block ((j-1)a, ja), j in 1..k, samples in natural
/// order. Any column of a degenerate A can be left out of a basis minor, so
/// the remaining blocks are determined.
struct FreeBlock {
  int j = 1;
  Block values;
};

inline Potential solve_main_degenerate(const WFunction& w, const ProblemConfig& cfg, const FreeBlock& free,
                                       const BlockGrid& grid, const DegenerateSolveOptions& opts = {}) {
  detail::check_degenerate_solvable(w, cfg, grid, opts);
  const int k = cfg.k(), m = grid.m;
  require(free.j >= 1 && free.j <= k, "free block index must lie in 1..k");
  require(static_cast<int>(free.values.size()) == m, "free block must have m samples");

  // Block j-1 of q is R_col q with col = k - j + 1.
  const int col = k - free.j + 1;
  GridSamples known(grid);
  std::copy(free.values.begin(), free.values.end(), known.block(free.j - 1).begin());
  const Block x_col = apply_Rm(known, col, cfg);

  const Eigen::MatrixXcd A = build_A(cfg).dense();
  std::vector<int> cols;
  for (int c = 0; c < k; ++c)
    if (c != col - 1) cols.push_back(c);
  // Drop the row that leaves the best-conditioned (k-1) x (k-1) minor.
  int dropped = 0;
  double best = -1.0;
  for (int r = 0; r < k; ++r) {
    Eigen::MatrixXcd minor(k - 1, k - 1);
    for (int rr = 0, ri = 0; rr < k; ++rr) {
      if (rr == r) continue;
      for (int ci = 0; ci < k - 1; ++ci) minor(ri, ci) = A(rr, cols[ci]);
      ++ri;
    }
    const double d = std::abs(minor.determinant());
    if (d > best) {
      best = d;
      dropped = r;
    }
  }
  Eigen::MatrixXcd minor(k - 1, k - 1);
  std::vector<int> rows;
  for (int r = 0; r < k; ++r)
    if (r != dropped) rows.push_back(r);
  for (int ri = 0; ri < k - 1; ++ri)
    for (int ci = 0; ci < k - 1; ++ci) minor(ri, ci) = A(rows[ri], cols[ci]);

  const StackedVector y = main_rhs(w, cfg, grid);
  Eigen::MatrixXcd rhs(k - 1, m);
  for (int ri = 0; ri < k - 1; ++ri)
    for (int i = 0; i < m; ++i) rhs(ri, i) = y.blocks[rows[ri]][i] - A(rows[ri], col - 1) * x_col[i];
  const Eigen::MatrixXcd x = minor.fullPivLu().solve(rhs);

  StackedVector rq;
  rq.blocks.assign(k, Block(m));
  rq.blocks[col - 1] = x_col;
  for (int ci = 0; ci < k - 1; ++ci)
    for (int i = 0; i < m; ++i) rq.blocks[cols[ci]][i] = x(ci, i);
  return Potential(invert_R(rq, cfg));
}

/// q on (0, a) directly from W in the non-degenerate groups:
///   (iv)  k odd:  W(x) + sum_{j=1}^{(k-1)/2} (W(2ja+x) - W(2ja-x))
///         k even: sum_{j=1}^{k/2} (W((2j-1)a+x) - W((2j-1)a-x))
///   (v)   sum_{j=1}^{k/2} (-1)^j (W((k+1-2j)a-x) + W((k+1-2j)a+x))
///   (vi)  (-1)^{(k+1)/2} (W(x) + sum_{j=1}^{(k-1)/2} (-1)^j (W(2ja+x) + W(2ja-x)))
inline Block lemma32_reconstruct(const WFunction& w, const ProblemConfig& cfg, const BlockGrid& grid) {
  const CaseLabel label = classify_case(cfg);
  if (label.degenerate)
    fail(ErrorKind::InvalidInput, "configuration " + describe(cfg) + " is degenerate; q on (0, a) is not determined");
  require(grid.k == cfg.k(), "grid must have k blocks");
  const GridSamples wg = w.sample(grid);
  const int k = cfg.k(), m = grid.m;
  auto sgn = [](int j) { return j % 2 ? -1.0 : 1.0; };
  auto W = [&](int n, int sign, int i) { return wg.shifted(n, sign, i); };
  Block q(m);
  for (int i = 0; i < m; ++i) {
    cplx v = 0.0;
    if (label.group == CaseGroup::IV) {
      if (k % 2) {
        v = W(0, +1, i);
        for (int j = 1; j <= (k - 1) / 2; ++j) v += W(2 * j, +1, i) - W(2 * j, -1, i);
      } else {
        for (int j = 1; j <= k / 2; ++j) v += W(2 * j - 1, +1, i) - W(2 * j - 1, -1, i);
      }
    } else if (label.group == CaseGroup::V) {
      for (int j = 1; j <= k / 2; ++j) v += sgn(j) * (W(k + 1 - 2 * j, -1, i) + W(k + 1 - 2 * j, +1, i));
    } else {
      v = W(0, +1, i);
      for (int j = 1; j <= (k - 1) / 2; ++j) v += sgn(j) * (W(2 * j, +1, i) + W(2 * j, -1, i));
      v *= sgn((k + 1) / 2);
    }
    q[i] = v;
  }
  return q;
}

}  // namespace frozen_sl
