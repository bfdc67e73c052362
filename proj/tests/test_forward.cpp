#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace frozen_sl;

namespace {

// Closed form of Delta for q = 1, k = 2, (0,0): the square-wave kernel gives
// (2 sin(rho pi/2) - sin(rho pi))/rho^3 + sin(rho pi)/rho.
cplx square_wave_delta(cplx lambda) {
  const cplx rho = std::sqrt(lambda);
  return (2.0 * std::sin(rho * pi / 2.0) - std::sin(rho * pi)) / (rho * rho * rho) + std::sin(rho * pi) / rho;
}

}  // namespace

TEST(DeltaW, ZeroKernelExamples) {
  const ProblemConfig cfg(0, 0, 1);
  const WFunction zero = WFunction::zero(0, 0);
  EXPECT_NEAR(std::abs(eval_delta_W(1.0, zero, cfg)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(eval_delta_W(0.25, zero, cfg) - 2.0), 0.0, 1e-15);
}

TEST(DeltaW, SquareWaveKernel) {
  const ProblemConfig cfg(0, 0, 2);
  const WFunction w = w_from_q_piecewise(Potential::constant(1.0), cfg);
  EXPECT_NEAR(std::abs(eval_delta_W(1.0, w, cfg) - 2.0), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(eval_delta_W(4.0, w, cfg)), 0.0, 1e-13);
  for (cplx lam : {cplx(2.3, 0.0), cplx(-5.0, 3.0), cplx(40.0, -7.0)})
    EXPECT_NEAR(std::abs(eval_delta_W(lam, w, cfg) - square_wave_delta(lam)), 0.0, 1e-12 * (1 + std::abs(square_wave_delta(lam))));
  // The same kernel as a sampled grid (Simpson path).
  const WFunction grid_w = w_from_q_piecewise(Potential(Potential::constant(1.0).sample(BlockGrid(2, 256))), cfg);
  EXPECT_NEAR(std::abs(eval_delta_W(2.3, grid_w, cfg) - square_wave_delta(2.3)), 0.0, 1e-9);
}

TEST(DeltaW, ModeClosedFormMatchesQuadrature) {
  for (const auto& cfg : fixtures::configs(1, 1)) {
    std::vector<cplx> c;
    const int n = cfg.equal_orders() ? 9 : 8;
    for (int i = 0; i < n; ++i) c.push_back(fixtures::random_complex());
    if (cfg.alpha() == 0 && cfg.beta() == 0) c[0] = 0.0;
    const WFunction modes = WFunction::from_modes(cfg.alpha(), cfg.beta(), c);
    const WFunction grid = WFunction::from_grid(cfg.alpha(), cfg.beta(), modes.sample(BlockGrid(1, 2048)));
    for (cplx rho : {cplx(0.7, 0.2), cplx(3.0, 0.0), cplx(5.5, -1.0)}) {
      const DeltaRho a = eval_delta_W_rho(rho, modes);
      const DeltaRho b = eval_delta_W_rho(rho, grid);
      EXPECT_NEAR(std::abs(a.value - b.value), 0.0, 1e-8 * (1 + std::abs(a.value))) << describe(cfg);
      EXPECT_NEAR(std::abs(a.d_rho - b.d_rho), 0.0, 1e-7 * (1 + std::abs(a.d_rho))) << describe(cfg);
    }
  }
}

TEST(DeltaW, AnalyticDerivative) {
  for (const auto& cfg : fixtures::configs(3, 3)) {
    const WFunction w = w_from_q_piecewise(fixtures::random_smooth(), cfg);
    for (cplx rho : {cplx(1.3, 0.1), cplx(6.2, -0.5)}) {
      const double h = 1e-6;
      const cplx fd = (eval_delta_W_rho(rho + h, w).value - eval_delta_W_rho(rho - h, w).value) / (2 * h);
      EXPECT_NEAR(std::abs(eval_delta_W_rho(rho, w).d_rho - fd), 0.0, 1e-7 * (1 + std::abs(fd))) << describe(cfg);
    }
  }
}

TEST(DeltaDirect, Examples) {
  for (const auto& cfg : fixtures::configs(1, 3)) {
    for (cplx lam : {cplx(0.3, 0.0), cplx(7.0, 2.0), cplx(-4.0, 0.0)}) {
      const cplx rho = std::sqrt(lam);
      cplx lead;
      if (!cfg.equal_orders()) lead = (cfg.alpha() ? -1.0 : 1.0) * std::cos(rho * pi);
      else lead = (cfg.alpha() ? lam : 1.0) * std::sin(rho * pi) / rho;
      EXPECT_NEAR(std::abs(eval_delta_direct(lam, Potential::zero(), cfg) - lead), 0.0, 1e-13 * (1 + std::abs(lead)));
    }
  }
  EXPECT_NEAR(std::abs(eval_delta_direct(1.0, Potential::constant(1.0), {0, 0, 2}) - 2.0), 0.0, 1e-12);
}

TEST(DeltaDirect, AgreesWithKernelOnRandomPoints) {
  const ProblemConfig cfg(1, 0, 2);
  const Potential q = fixtures::random_cosine();
  const WFunction w = w_from_q_piecewise(q, cfg);
  for (int i = 0; i < 50; ++i) {
    const cplx lam = fixtures::random_in_disk(100.0);
    const cplx a = eval_delta_W(lam, w, cfg), b = eval_delta_direct(lam, q, cfg);
    EXPECT_LE(std::abs(a - b), 1e-8 * (1 + std::abs(a))) << lam;
  }
}

TEST(DeltaDirect, GridPotentialUsesSimpson) {
  const ProblemConfig cfg(0, 1, 2);
  const Potential q = fixtures::random_smooth();
  const Potential g(q.sample(BlockGrid(2, 256)));
  for (cplx lam : {cplx(3.0, 1.0), cplx(30.0, 0.0)})
    EXPECT_NEAR(std::abs(eval_delta_direct(lam, g, cfg) - eval_delta_direct(lam, q, cfg)), 0.0, 1e-7);
}

TEST(DeltaEntire, ContinuousThroughTheOrigin) {
  for (const auto& cfg : fixtures::configs(2, 2)) {
    const WFunction w = w_from_q_piecewise(fixtures::random_smooth(), cfg);
    const cplx at0 = eval_delta_W(0.0, w, cfg);
    EXPECT_TRUE(std::isfinite(std::abs(at0)));
    for (double lam : {1e-4, 1e-8, 1e-12, -1e-8}) {
      const cplx v = eval_delta_W(lam, w, cfg);
      EXPECT_TRUE(std::isfinite(std::abs(v)));
      EXPECT_NEAR(std::abs(v - at0), 0.0, 10 * std::abs(lam) + 1e-13) << describe(cfg);
    }
  }
}

TEST(Spectrum, ZeroPotentialExamples) {
  const Spectrum s00 = compute_spectrum(Potential::zero(), {0, 0, 1}, 10);
  for (int n = 1; n <= 10; ++n) EXPECT_NEAR(std::abs(s00[n - 1] - double(n * n)), 0.0, 1e-10);
  const Spectrum s01 = compute_spectrum(Potential::zero(), {0, 1, 1}, 3);
  EXPECT_NEAR(std::abs(s01[0] - 0.25), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s01[1] - 2.25), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s01[2] - 6.25), 0.0, 1e-12);
  const Spectrum s11 = compute_spectrum(Potential::zero(), {1, 1, 2}, 4);
  EXPECT_NEAR(std::abs(s11[0]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s11[3] - 9.0), 0.0, 1e-10);
}

TEST(Spectrum, ConstantPotentialForcedValues) {
  const ProblemConfig cfg(0, 0, 2);
  const Spectrum s = compute_spectrum(Potential::constant(1.0), cfg, 6);
  EXPECT_NEAR(std::abs(s[1] - 4.0), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(s[3] - 16.0), 0.0, 1e-8);
  // Other eigenvalues are zeros of the closed form above.
  for (int n : {1, 3, 5}) EXPECT_LT(std::abs(square_wave_delta(s[n - 1])), 1e-10);
}

TEST(Spectrum, RootResidualBound) {
  for (const auto& cfg : fixtures::configs(2, 3)) {
    const CharacteristicFunction delta(w_from_q_piecewise(fixtures::random_smooth(), cfg), cfg);
    const Spectrum s = compute_spectrum(delta, 15);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const cplx rho = std::sqrt(s[i]);
      const double bound = 1e-8 * std::max(1.0, std::abs(delta.at_rho(rho).d_rho) * std::abs(rho));
      EXPECT_LE(std::abs(delta(s[i])), bound) << describe(cfg) << " n=" << i + 1;
    }
  }
}

TEST(Spectrum, ParallelMatchesSerialAndVerifies) {
  const ProblemConfig cfg(0, 1, 3);
  const CharacteristicFunction delta(w_from_q_piecewise(fixtures::random_smooth(), cfg), cfg);
  SpectrumOptions par;
  par.parallel = true;
  par.threads = 4;
  par.verify = true;
  const SpectrumReport a = compute_spectrum_report(delta, 12, par);
  const Spectrum b = compute_spectrum(delta, 12);
  EXPECT_EQ(fixtures::max_abs_diff(a.spectrum.values(), b.values()), 0.0);
  ASSERT_TRUE(a.verified_count.has_value());
  EXPECT_EQ(*a.verified_count, a.expected_count);
}

TEST(Spectrum, OrderedByAsymptoticIndex) {
  const ProblemConfig cfg(1, 1, 3);
  SpectrumOptions opts;
  opts.verify = true;
  const SpectrumReport r = compute_spectrum_report(
      CharacteristicFunction(fixtures::random_smooth(), cfg), 20, opts);
  // Low eigenvalues may move by O(1); closeness to the seed is asymptotic.
  for (int n = 5; n <= 20; ++n)
    EXPECT_LT(std::abs(std::sqrt(r.spectrum[n - 1]) - asymptotic_rho(n, cfg)), 0.5) << n;
  ASSERT_TRUE(r.verified_count.has_value());
  EXPECT_EQ(*r.verified_count, r.expected_count);
}

TEST(Spectrum, OddPotentialIsInvisible) {
  const ProblemConfig cfg(0, 0, 2);
  const Potential q = fixtures::random_odd_about_half_pi();
  const WFunction w = w_from_q_piecewise(q, cfg);
  for (int i = 0; i < 20; ++i) {
    const cplx lam = fixtures::random_in_disk(50.0);
    const cplx rho = std::sqrt(lam);
    const cplx zero_delta = std::sin(rho * pi) / rho;
    EXPECT_LE(std::abs(eval_delta_direct(lam, q, cfg) - zero_delta), 1e-10 * (1.0 + std::abs(zero_delta)));
  }
  const Spectrum s = compute_spectrum(CharacteristicFunction(w, cfg), 10);
  for (int n = 1; n <= 10; ++n) EXPECT_NEAR(std::abs(s[n - 1] - double(n * n)), 0.0, 1e-9);
}

TEST(RootTools, CountsAndLocatesPolynomialZeros) {
  auto f = [](cplx z) { return (z - 1.0) * (z - 1.0) * (z + cplx(2.0, 1.0)) * (z - cplx(0.5, -3.0)); };
  auto fd = [&](cplx z) {
    const double h = 1e-7;
    return std::pair<cplx, cplx>{f(z), (f(z + h) - f(z - h)) / (2 * h)};
  };
  EXPECT_EQ(roots::count_zeros(f, {{-3.0, -4.0}, {3.0, 4.0}}), 4);
  EXPECT_EQ(roots::count_zeros(f, {{0.0, -0.5}, {2.0, 0.5}}), 2);
  EXPECT_EQ(roots::count_zeros(f, {{2.0, 2.0}, {3.0, 3.0}}), 0);
  auto zs = roots::zeros_in_rect(f, fd, {{-3.1, -4.1}, {3.3, 3.9}});
  ASSERT_EQ(zs.size(), 4u);
  int near_one = 0;
  for (const cplx& z : zs) near_one += std::abs(z - 1.0) < 1e-4;
  EXPECT_EQ(near_one, 2);
}

TEST(RootTools, NewtonClampsSteps) {
  auto fd = [](cplx z) { return std::pair<cplx, cplx>{std::sin(z), std::cos(z)}; };
  const auto r = roots::newton(fd, 3.0, 1e-14, 50, 0.5);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(std::abs(r.root - pi), 0.0, 1e-13);
}

TEST(Degeneracy, ForcedEigenvaluesInEveryDegenerateGroup) {
  for (const ProblemConfig cfg : {ProblemConfig(0, 0, 2), ProblemConfig(0, 0, 3), ProblemConfig(1, 0, 3),
                                  ProblemConfig(1, 1, 2), ProblemConfig(1, 1, 4)}) {
    const Spectrum s = compute_spectrum(fixtures::random_cosine(), cfg, 16);
    const DegenerationReport r = check_degeneration_spectrum(s);
    EXPECT_FALSE(r.indices.empty());
    EXPECT_LT(r.max_deviation, 1e-8) << describe(cfg);
  }
}

TEST(Degeneracy, ExamplesAndIndexSets) {
  const ProblemConfig cfg(0, 0, 2);
  std::vector<cplx> v;
  for (int n = 1; n <= 6; ++n) v.push_back(double(n * n));
  v[1] = 4.1;
  const DegenerationReport r = check_degeneration_spectrum(Spectrum(cfg, v));
  EXPECT_EQ(r.indices, (std::vector<int>{2, 4, 6}));
  EXPECT_NEAR(r.max_deviation, 0.1, 1e-12);
  EXPECT_EQ(r.worst_index(), 2);

  // (1,1), k = 2: lambda_{2n} = 4 (n - 1/2)^2 = (2n - 1)^2.
  const auto d = designated_eigenvalues({1, 1, 2}, 8);
  ASSERT_EQ(d.size(), 4u);
  EXPECT_EQ(d[0], std::make_pair(2, 1.0));
  EXPECT_EQ(d[1], std::make_pair(4, 9.0));
  // (1,0), k = 3: index 3n - 1, value 9 (n - 1/2)^2.
  const auto e = designated_eigenvalues({1, 0, 3}, 8);
  EXPECT_EQ(e[0], std::make_pair(2, 2.25));
  EXPECT_EQ(e[1], std::make_pair(5, 20.25));
  EXPECT_THROW(check_degeneration_spectrum(Spectrum::asymptotic({0, 1, 2}, 4)), Error);
}

TEST(Degeneracy, NondegenerateSpectraMissTheForcedValues) {
  // The same index pattern applied to a non-degenerate configuration: the
  // values are generically off.
  const ProblemConfig cfg(0, 1, 2);
  const Spectrum s = compute_spectrum(fixtures::random_cosine(), cfg, 12);
  double worst = 0.0;
  for (int n = 1; 2 * n <= 12; ++n) worst = std::max(worst, std::abs(s[2 * n - 1] - std::pow(asymptotic_rho(2 * n, cfg), 2)));
  EXPECT_GT(worst, 1e-4);
}

TEST(TrigSum, ClosedFormAndSeriesAgree) {
  EXPECT_EQ(trig_sum_T(1, {0, 0, 2}), 0);
  EXPECT_EQ(trig_sum_T(2, {0, 0, 2}), 2);
  EXPECT_EQ(trig_sum_T(0, {0, 0, 3}), 3);
  for (int k = 1; k <= 9; ++k)
    for (int n = 0; n <= 30; ++n) {
      const ProblemConfig cfg(0, 0, k);
      EXPECT_NEAR(trig_sum_T_series(n, cfg), trig_sum_T(n, cfg), 1e-12) << k << " " << n;
    }
}
