#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace frozen_sl;

TEST(Classify, ExamplesFromTheCaseTable) {
  const CaseLabel a = classify_case({0, 0, 5});
  EXPECT_EQ(a.group, CaseGroup::I);
  EXPECT_TRUE(a.degenerate);
  const CaseLabel b = classify_case({0, 1, 3});
  EXPECT_EQ(b.group, CaseGroup::IV);
  EXPECT_FALSE(b.degenerate);
  const CaseLabel c = classify_case({1, 0, 4});
  EXPECT_EQ(c.group, CaseGroup::V);
  EXPECT_FALSE(c.degenerate);
  EXPECT_EQ(classify_case({1, 0, 3}).group, CaseGroup::II);
  EXPECT_EQ(classify_case({1, 1, 2}).group, CaseGroup::III);
  EXPECT_EQ(classify_case({1, 1, 3}).group, CaseGroup::VI);
}

TEST(Classify, ExactlyOneGroupPerConfig) {
  for (const auto& cfg : fixtures::configs(1, 9)) {
    const CaseLabel l = classify_case(cfg);
    const bool deg_group = l.group == CaseGroup::I || l.group == CaseGroup::II || l.group == CaseGroup::III;
    EXPECT_EQ(l.degenerate, deg_group) << describe(cfg);
  }
}

TEST(Config, RejectsInvalidTriples) {
  EXPECT_THROW(ProblemConfig(2, 0, 1), Error);
  EXPECT_THROW(ProblemConfig(0, -1, 1), Error);
  EXPECT_THROW(ProblemConfig(0, 0, 0), Error);
  const ProblemConfig cfg(1, 0, 4);
  EXPECT_DOUBLE_EQ(cfg.a() * cfg.k(), pi);
}

TEST(AsymptoticRho, Examples) {
  EXPECT_DOUBLE_EQ(asymptotic_rho(1, {0, 0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(asymptotic_rho(1, {0, 1, 1}), 0.5);
  EXPECT_DOUBLE_EQ(asymptotic_rho(3, {1, 1, 1}), 2.0);
  EXPECT_THROW(asymptotic_rho(0, {0, 0, 1}), Error);
}

TEST(Residuals, ZeroForUnperturbedSpectra) {
  for (const auto& cfg : {ProblemConfig(0, 0, 2), ProblemConfig(0, 1, 3), ProblemConfig(1, 1, 2)}) {
    const auto r = spectrum_residuals(Spectrum::asymptotic(cfg, 30));
    for (const cplx& k : r.kappa) EXPECT_EQ(k, 0.0);
    EXPECT_TRUE(r.l2_plausible);
  }
}

TEST(Residuals, ConstantPotentialIsPlausible) {
  const ProblemConfig cfg(0, 0, 2);
  const Spectrum spec = compute_spectrum(Potential::constant(1.0), cfg, 20);
  const auto r = spectrum_residuals(spec);
  for (const cplx& k : r.kappa) EXPECT_TRUE(std::isfinite(std::abs(k)));
  EXPECT_TRUE(r.l2_plausible);
}

TEST(Residuals, BranchNearestSeed) {
  // sqrt(λ) taken on the branch closest to the seed, so kappa stays small.
  const ProblemConfig cfg(0, 0, 1);
  const Spectrum spec(cfg, {cplx(1.0, -1e-3)});
  EXPECT_LT(std::abs(spec.residuals()[0]), 1e-3);
}

TEST(Residuals, RejectsNonFinite) {
  EXPECT_THROW(Spectrum({0, 0, 1}, {1.0, std::numeric_limits<double>::quiet_NaN()}), Error);
  EXPECT_THROW(spectrum_residuals(Spectrum({0, 0, 1}, {})), Error);
}

TEST(Representation, CosineRoundTripThroughGrid) {
  std::vector<cplx> c;
  for (int n = 0; n <= 7; ++n) c.push_back(fixtures::random_complex());
  const Potential q = Potential::fourier_cos(c);
  const BlockGrid grid(3, 8 * 8);
  const Potential g(q.sample(grid));
  const auto back = g.fourier_cos(7);
  for (int n = 0; n <= 7; ++n) EXPECT_NEAR(std::abs(back[n] - c[n]), 0.0, 1e-10) << n;
}

TEST(Grid, ShiftedSamplesAreExactIndexMaps) {
  const BlockGrid grid(4, 16);
  const Potential q = Potential::sampled(grid, [](double x) { return cplx(std::cos(3 * x), x); });
  const GridSamples& g = q.grid();
  for (int n = 1; n <= 4; ++n)
    for (int i = 0; i < grid.m; ++i) {
      const double t = grid.local_point(i);
      const cplx minus = cplx(std::cos(3 * (n * grid.a() - t)), n * grid.a() - t);
      EXPECT_NEAR(std::abs(g.shifted(n, -1, i) - minus), 0.0, 1e-13);
      if (n < 4) {
        const cplx plus = cplx(std::cos(3 * (n * grid.a() + t)), n * grid.a() + t);
        EXPECT_NEAR(std::abs(g.shifted(n, +1, i) - plus), 0.0, 1e-13);
      }
    }
}

TEST(FrozenKTest, InvertibilityChecks) {
  EXPECT_THROW(FrozenK::scalar(-1.0), Error);
  EXPECT_NO_THROW(FrozenK::scalar(cplx(-1.0, 0.5)));
  Eigen::MatrixXcd m = -Eigen::MatrixXcd::Identity(3, 3);
  EXPECT_THROW(FrozenK::matrix(m), Error);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 2) = 1.0;
  EXPECT_NO_THROW(FrozenK::matrix(m));
}

TEST(FrozenKTest, SolveIdentityPlusInvertsIPlusK) {
  const std::vector<cplx> r = {1.0, cplx(2.0, -1.0), 0.5};
  const std::vector<cplx> p = {0.1, 0.2, 0.3};
  Eigen::MatrixXcd M(3, 3);
  M << 0.5, 0.1, 0.0, 0.0, 0.2, cplx(0, 0.3), 0.1, 0.0, -0.4;
  for (const FrozenK& K : {FrozenK::identity(), FrozenK::scalar(cplx(0.3, 0.2)), FrozenK::constant(p),
                           FrozenK::matrix(M)}) {
    const auto f = K.solve_identity_plus(r);
    const auto kf = K.apply(f);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(f[i] + kf[i] - r[i]), 0.0, 1e-14);
  }
  EXPECT_THROW(FrozenK::constant(p).apply(std::vector<cplx>(4)), Error);
}

TEST(Special, EntireFunctionsAtTheOrigin) {
  EXPECT_NEAR(std::abs(special::sinc_pi(0.0) - pi), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(special::sinc(0.0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(special::versinc(0.0) - 0.5), 0.0, 1e-15);
  // Continuity through the series branch.
  for (double z : {1e-9, 1e-5, 1e-3}) {
    EXPECT_NEAR(std::abs(special::sinc_pi(z) - std::sin(pi * z) / z), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(special::versinc(z) - 0.5), 0.0, 1e-6);
  }
  EXPECT_NEAR(std::abs(special::versinc(cplx(2.0, 1.0)) - (1.0 - std::cos(cplx(2.0, 1.0))) / cplx(3.0, 4.0)), 0.0,
              1e-15);
}

TEST(Special, DerivativesMatchDifferences) {
  const double h = 1e-6;
  for (cplx z : {cplx(0.3, 0.1), cplx(2.7, -0.4), cplx(1e-4, 0.0), cplx(7.0, 2.0)}) {
    const auto fd = [&](auto f) { return (f(z + h) - f(z - h)) / (2 * h); };
    EXPECT_NEAR(std::abs(special::sinc_pi_deriv(z) - fd([](cplx x) { return special::sinc_pi(x); })), 0.0, 1e-7);
    EXPECT_NEAR(std::abs(special::sinc_deriv(z) - fd([](cplx x) { return special::sinc(x); })), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(special::versinc_deriv(z) - fd([](cplx x) { return special::versinc(x); })), 0.0, 1e-8);
  }
}

TEST(Special, LogGammaIdentities) {
  // Gamma(n) = (n-1)!, Gamma(1/2) = sqrt(pi), Gamma(z+1) = z Gamma(z), reflection.
  EXPECT_NEAR(std::exp(special::log_gamma(6.0)).real(), 120.0, 1e-10);
  EXPECT_NEAR(std::exp(special::log_gamma(0.5)).real(), std::sqrt(pi), 1e-14);
  for (cplx z : {cplx(0.3, 2.0), cplx(-3.7, 0.2), cplx(25.0, -10.0), cplx(-0.5, 0.0)}) {
    const cplx lhs = std::exp(special::log_gamma(z + 1.0) - special::log_gamma(z));
    EXPECT_NEAR(std::abs(lhs - z) / std::abs(z), 0.0, 1e-12);
    const cplx refl = std::exp(special::log_gamma(z) + special::log_gamma(1.0 - z)) * special::sinpi(z);
    EXPECT_NEAR(std::abs(refl - pi), 0.0, 1e-11);
  }
  EXPECT_TRUE(std::isinf(special::log_gamma(-3.0).real()));
}
