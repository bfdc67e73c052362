#pragma once

#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "frozen_sl/grid.hpp"

namespace frozen_sl {

/// The restriction q(a - t) = K(q(a + t)), 0 < t < a, used to single out
/// one potential in the degenerate case. K acts on samples of a function on
/// (0, a) taken at the local midpoints of a BlockGrid block.
class FrozenK {
 public:
  struct Identity {};
  struct Scalar {
    cplx kappa;
  };
  /// K(f) = p for every f.
  struct ConstantFunction {
    std::vector<cplx> p;
  };
  struct Matrix {
    Eigen::MatrixXcd m;
  };
  using Rep = std::variant<Identity, Scalar, ConstantFunction, Matrix>;

  static FrozenK identity() { return FrozenK(Identity{}); }

  static FrozenK scalar(cplx kappa) {
    require(std::abs(kappa + 1.0) > 1e-12, "scalar K = -1 makes I + K singular");
    return FrozenK(Scalar{kappa});
  }

  static FrozenK constant(std::vector<cplx> p) {
    require(!p.empty(), "constant K needs samples of p on (0, a)");
    return FrozenK(ConstantFunction{std::move(p)});
  }

  static FrozenK matrix(Eigen::MatrixXcd m) {
    require(m.rows() == m.cols() && m.rows() > 0, "matrix K must be square");
    const Eigen::MatrixXcd ipk = Eigen::MatrixXcd::Identity(m.rows(), m.cols()) + m;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(ipk);
    lu.setThreshold(1e-12);
    require(lu.isInvertible(), "I + K is singular");
    return FrozenK(Matrix{std::move(m)});
  }

  const Rep& rep() const { return rep_; }

  /// Sample count K is tied to, or 0 when it acts at any resolution.
  int resolution() const {
    if (const auto* c = std::get_if<ConstantFunction>(&rep_)) return static_cast<int>(c->p.size());
    if (const auto* m = std::get_if<Matrix>(&rep_)) return static_cast<int>(m->m.rows());
    return 0;
  }

  std::vector<cplx> apply(std::span<const cplx> f) const {
    check_size(f.size());
    std::vector<cplx> out(f.begin(), f.end());
    std::visit(
        [&](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Scalar>) {
            for (auto& v : out) v *= k.kappa;
          } else if constexpr (std::is_same_v<T, ConstantFunction>) {
            out = k.p;
          } else if constexpr (std::is_same_v<T, Matrix>) {
            const Eigen::VectorXcd x = Eigen::Map<const Eigen::VectorXcd>(f.data(), f.size());
            const Eigen::VectorXcd y = k.m * x;
            out.assign(y.data(), y.data() + y.size());
          }
        },
        rep_);
    return out;
  }

  /// Solves f + K(f) = r for f.
  std::vector<cplx> solve_identity_plus(std::span<const cplx> r) const {
    check_size(r.size());
    std::vector<cplx> out(r.begin(), r.end());
    std::visit(
        [&](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Identity>) {
            for (auto& v : out) v *= 0.5;
          } else if constexpr (std::is_same_v<T, Scalar>) {
            for (auto& v : out) v /= (1.0 + k.kappa);
          } else if constexpr (std::is_same_v<T, ConstantFunction>) {
            for (std::size_t i = 0; i < out.size(); ++i) out[i] -= k.p[i];
          } else {
            const Eigen::MatrixXcd ipk = Eigen::MatrixXcd::Identity(k.m.rows(), k.m.cols()) + k.m;
            const Eigen::VectorXcd rhs = Eigen::Map<const Eigen::VectorXcd>(r.data(), r.size());
            const Eigen::VectorXcd x = ipk.fullPivLu().solve(rhs);
            out.assign(x.data(), x.data() + x.size());
          }
        },
        rep_);
    return out;
  }

 private:
  explicit FrozenK(Rep rep) : rep_(std::move(rep)) {}

  void check_size(std::size_t n) const {
    const int res = resolution();
    require(res == 0 || res == static_cast<int>(n), "K resolution does not match the grid block size");
  }

  Rep rep_;
};

}  // namespace frozen_sl
