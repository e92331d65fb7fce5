#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "ricker/errors.hpp"
#include "ricker/semiconj.hpp"

using namespace ricker;

TEST(T0, Examples) {
  EXPECT_DOUBLE_EQ(compute_t0(1.0, std::exp(-1.0)), 1.0);
  EXPECT_NEAR(compute_t0(2.25, 2.25), std::exp(2.25), 1e-12);
  EXPECT_NEAR(std::exp(2.25), 9.4877, 1e-4);
  const double d = 3.0, rm1 = 0.4;
  const FactorState fs = FactorState::from_seeds(d, rm1, rm1 * std::exp(d / 2 - rm1));
  EXPECT_TRUE(fs.on_invariant_curve());
  EXPECT_NEAR(fs.t0, fs.t1, 1e-12 * fs.t0);
  EXPECT_THROW((void)compute_t0(0.0, 1.0), DomainError);
  EXPECT_THROW((void)compute_t0(1.0, -1.0), DomainError);
}

TEST(Maps, Values) {
  EXPECT_EQ(f_map(0.0, {2.0, 1.0}), 0.0);
  EXPECT_NEAR(f_map(1.0, {2.0, 1.0}), std::exp(1.0 - std::exp(-1.0)), 1e-15);
  EXPECT_NEAR(f_map(1.0, {2.0, 1.0}), 1.88160, 1e-5);
  EXPECT_EQ(g_map(0.0, 3.0), 0.0);
  EXPECT_DOUBLE_EQ(g_map(1.0, 1.0), std::exp(-1.0));
  const double d = 2.7;
  EXPECT_NEAR(g_map(d / 2, std::exp(d / 2)), d / 2, 1e-15);
  EXPECT_NEAR(curve_map(d / 2, d), d / 2, 1e-15);
  EXPECT_THROW((void)f_map(1.0, {800.0, 0.0}), OverflowError);
}

TEST(Maps, DerivativeAgainstFiniteDifferences) {
  auto g = oracle::rng(21);
  for (int set = 0; set < 20; ++set) {
    const double d = oracle::uniform(g, 0.2, 5.0);
    const double t = oracle::uniform(g, 0.05, 5.0);
    for (int i = 0; i < 100; ++i) {
      const double r = oracle::uniform(g, 0.01, 8.0);
      const double fd = oracle::central_diff([&](double x) { return oracle::f_t(x, d, t); }, r);
      EXPECT_NEAR(f_derivative(r, {d, t}), fd, 1e-6);
    }
  }
  EXPECT_EQ(f_derivative(1.0, {2.0, 1.0}), 0.0);
  // t r e^{-r} = 1 at r = 0.5 for t = 2 e^{0.5}
  EXPECT_NEAR(f_derivative(0.5, {2.0, 2.0 * std::exp(0.5)}), 0.0, 1e-15);
  EXPECT_NEAR(f_derivative(0.5, {2.0, 1.0}),
              oracle::central_diff([](double x) { return oracle::f_t(x, 2.0, 1.0); }, 0.5), 1e-6);
  EXPECT_NEAR(g_derivative(0.7, 2.0),
              oracle::central_diff([](double x) { return oracle::g_t(x, 2.0); }, 0.7), 1e-8);
}

TEST(Identities, OnGrid) {
  auto g = oracle::rng(22);
  for (int set = 0; set < 5; ++set) {
    const double d = oracle::uniform(g, 0.5, 6.0);
    const double t0 = oracle::uniform(g, 0.1, 10.0);
    const double t1 = std::exp(d) / t0;
    for (int i = 1; i <= 1000; ++i) {
      const double r = 20.0 * i / 1000.0;
      EXPECT_LE(oracle::rel(f_map(g_map(r, t0), {d, t1}), g_map(f_map(r, {d, t0}), t0)), 1e-9);
      EXPECT_LE(oracle::rel(f_map(g_map(r, t1), {d, t0}), g_map(f_map(r, {d, t1}), t1)), 1e-9);
      EXPECT_LE(oracle::rel(g_map(g_map(r, t0), t1), f_map(r, {d, t0})), 1e-9);
      EXPECT_LE(oracle::rel(g_map(g_map(r, t1), t0), f_map(r, {d, t1})), 1e-9);
    }
  }
}

TEST(Factorization, GenericSeeds) {
  const FactorizationReport rep = verify_factorization(0.8, 1.9, 3.1, 100);
  EXPECT_LT(rep.t_product_residual, 1e-12);
  EXPECT_LT(rep.composition_residual, 1e-9);
  EXPECT_LT(rep.step_residual, 1e-9);
  EXPECT_FALSE(rep.on_curve);
}

TEST(Factorization, MultistableSeedsOddChain) {
  const FactorizationReport rep = verify_factorization(2.25, 3.0, 4.5, 400);
  EXPECT_LT(rep.odd_chain_residual, 1e-9);
  EXPECT_LT(rep.even_chain_residual, 1e-9);
  EXPECT_LT(rep.orbit_residual, 1e-9);

  // Independent dual path: odd terms r_{2k+1} from the oracle vs f0 iterates.
  const auto r = oracle::rmsa(4.5, 2.25, 3.0, 400);
  const double t0 = 3.0 / (2.25 * std::exp(-2.25));
  double s = 2.25;
  for (std::size_t idx = 2; idx < r.size(); idx += 2) {
    s = oracle::f_t(s, 4.5, t0);
    EXPECT_LE(oracle::rel(s, r[idx]), 1e-9);
  }
}

TEST(Factorization, InvariantCurveIsInvariant) {
  const double d = 5.0, rm1 = 0.9;
  const FactorizationReport rep = verify_factorization(rm1, rm1 * std::exp(d / 2 - rm1), d, 500);
  EXPECT_TRUE(rep.on_curve);
  EXPECT_LT(rep.curve_residual, 1e-9);
}

TEST(MinimalPeriod, Basics) {
  const std::vector<double> c(10, 1.5);
  EXPECT_EQ(minimal_period(c, 8, 1e-12), 1u);
  const std::vector<double> alt{1, 2, 1, 2, 1, 2, 1, 2};
  EXPECT_EQ(minimal_period(alt, 8, 1e-12), 2u);
  const std::vector<double> ramp{1, 2, 3, 4, 5, 6};
  EXPECT_FALSE(minimal_period(ramp, 3, 1e-12).has_value());
}

TEST(DetectCycle, Examples) {
  const CycleResult on_curve = detect_cycle(MapConfig{1.5, std::exp(0.75)}, 0.3);
  ASSERT_TRUE(on_curve.converged);
  EXPECT_EQ(on_curve.period, 1u);
  EXPECT_NEAR(on_curve.points[0], 0.75, 1e-8);

  const CycleResult three = detect_cycle(MapConfig{3.6, 1.0}, 0.5);
  ASSERT_TRUE(three.converged);
  EXPECT_EQ(three.period, 3u);
  EXPECT_TRUE(three.stable());

  const CycleResult fp = detect_cycle(MapConfig{1.2, 2.0}, 0.5);
  ASSERT_TRUE(fp.converged);
  EXPECT_EQ(fp.period, 1u);
  const double root = oracle::bisect([](double x) { return 1.2 - x - 2 * x * std::exp(-x); }, 1e-12, 1.2);
  EXPECT_NEAR(fp.points[0], root, 1e-8);
}

TEST(DetectCycle, NonConvergedReturnsWindow) {
  // Invariant curve map at d = 7 is chaotic for typical seeds.
  const CycleResult cr = detect_cycle([](double r) { return curve_map(r, 7.0); }, 0.3,
                                      CycleOptions{2000, 16, 1e-10});
  EXPECT_FALSE(cr.converged);
  EXPECT_EQ(cr.points.size(), 16u);
  EXPECT_THROW((void)detect_cycle(MapConfig{1.0, 1.0}, 0.0), DomainError);
}

TEST(Shadow, ThreeCycleTransfers) {
  const CycleResult cr = detect_cycle(MapConfig{3.6, 1.0}, 0.5);
  const ShadowResult sh = shadow_cycle(cr, 3.6, 1.0);
  ASSERT_TRUE(sh.cycle.converged);
  EXPECT_EQ(sh.cycle.period, 3u);
  EXPECT_FALSE(sh.degenerate);
  EXPECT_LT(sh.multiplier_gap, 1e-9);
  // Verify with f1 directly.
  const double t1 = std::exp(3.6);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_LE(oracle::rel(oracle::f_t(sh.cycle.points[k], 3.6, t1), sh.cycle.points[(k + 1) % 3]), 1e-9);
  }
}

TEST(Shadow, FixedPointAndDegenerate) {
  const double d = 1.7, t0 = 0.9;
  const CycleResult cr = detect_cycle(MapConfig{d, t0}, 0.4);
  ASSERT_EQ(cr.period, 1u);
  const ShadowResult sh = shadow_cycle(cr, d, t0);
  EXPECT_EQ(sh.cycle.period, 1u);
  EXPECT_NEAR(sh.cycle.points[0], g_map(cr.points[0], t0), 1e-15);

  CycleResult fake;
  fake.points = {1.0};
  fake.period = 1;
  fake.converged = true;
  fake.multiplier = 0.0;
  const ShadowResult deg = shadow_cycle(fake, 2.0, 1.0);
  EXPECT_TRUE(deg.degenerate);
  EXPECT_FALSE(deg.warning.empty());
}

TEST(Shadow, NonPeriodicStaysNonPeriodic) {
  const double d = 6.0, t0 = 0.05;
  const CycleOptions opt{2000, 64, 1e-8};
  const CycleResult cr = detect_cycle(MapConfig{d, t0}, 1.0, opt);
  if (cr.converged) GTEST_SKIP() << "f0 settled on a cycle for these parameters";
  const ShadowResult sh = shadow_cycle(cr, d, t0, opt);
  EXPECT_FALSE(sh.cycle.converged);
}

TEST(Lift, FixedPointGivesTwoCycleWithMeanD) {
  const double d = 1.5, t0 = 0.4;
  const CycleResult cr = detect_cycle(MapConfig{d, t0}, 0.5);
  const LiftedCycle lc = lift_cycle(cr, d, t0);
  ASSERT_EQ(lc.points.size(), 2u);
  EXPECT_EQ(lc.minimal_period, 2u);
  EXPECT_NEAR(lc.points[0] + lc.points[1], d, 1e-9);
  EXPECT_LT(lc.invariance_residual, 1e-9);
}

TEST(Lift, SixCycleMatchesSimulation) {
  const double d = 3.6, rm1 = 0.5;
  const double r0 = rm1 * std::exp(-rm1);  // t0 = 1
  const CycleResult cr = detect_cycle(MapConfig{d, 1.0}, rm1);
  const LiftedCycle lc = lift_cycle(cr, d, 1.0);
  EXPECT_EQ(lc.minimal_period, 6u);
  const auto r = oracle::rmsa(d, rm1, r0, 5000);
  const std::vector<double> tail(r.end() - 12, r.end());
  EXPECT_LT(cycle_distance(tail, lc.points), 1e-8);
}

TEST(Lift, OnCurveFixedPointIsConstant) {
  const double d = 1.5;
  CycleResult cr;
  cr.points = {0.75};
  cr.period = 1;
  cr.converged = true;
  const LiftedCycle lc = lift_cycle(cr, d, std::exp(0.75));
  EXPECT_EQ(lc.minimal_period, 1u);
  EXPECT_THROW((void)lift_cycle(CycleResult{}, d, 1.0), DomainError);
}

TEST(FixedPoint, Examples) {
  EXPECT_NEAR(fixed_point_dr(2.0, 1e-12), 2.0, 1e-9);
  const double x = fixed_point_dr(2.0, 1.0);
  EXPECT_NEAR(x, 1.688, 1e-3);
  EXPECT_NEAR(x, oracle::bisect([](double v) { return 2 - v - v * std::exp(-v); }, 1e-12, 2.0), 1e-10);
  const double y = fixed_point_dr(1.5, std::exp(1.0));
  EXPECT_LT(std::abs(eta(y, 1.5, std::exp(1.0))), 1e-12);
  EXPECT_THROW((void)fixed_point_dr(2.5, 1.0), DomainError);
  EXPECT_THROW((void)fixed_point_dr(0.0, 1.0), DomainError);
}

TEST(FixedPoint, ScanBeyondProvenRange) {
  const FixedPointReport rep = fixed_points_dr(4.0, 0.3);
  EXPECT_FALSE(rep.uniqueness_proven);
  ASSERT_FALSE(rep.roots.empty());
  for (double r : rep.roots) EXPECT_LT(std::abs(eta(r, 4.0, 0.3)), 1e-10);
  EXPECT_TRUE(fixed_points_dr(1.0, 0.3).uniqueness_proven);
}

TEST(FixedPoint, ContractionTowardFixedPoint) {
  auto g = oracle::rng(23);
  for (int i = 0; i < 50; ++i) {
    const double d = oracle::uniform(g, 0.05, 2.0);
    const double t = oracle::uniform(g, 0.05, 20.0);
    const double xb = fixed_point_dr(d, t);
    for (int k = 0; k < 50; ++k) {
      const double x = oracle::uniform(g, 0.001, 10.0);
      if (std::abs(x - xb) < 1e-6) continue;
      EXPECT_LT(std::abs(f_map(x, {d, t}) - xb), std::abs(x - xb));
    }
  }
}

TEST(TwoCycle, Examples) {
  const TwoCycle a = two_cycle_rmsa(1.5, 0.3, 1.0);
  EXPECT_NEAR(a.rho1 + a.rho2, 1.5, 1e-9);
  EXPECT_TRUE(a.converged);
  EXPECT_TRUE(a.pairing_as_expected);

  const TwoCycle b = two_cycle_rmsa(2.0, 1.0, 0.5);
  EXPECT_NEAR(b.rho1 + b.rho2, 2.0, 1e-9);
  EXPECT_TRUE(b.converged);

  const double rm1 = 0.4;
  const TwoCycle c = two_cycle_rmsa(1.2, rm1, rm1 * std::exp(0.6 - rm1));
  EXPECT_TRUE(c.degenerate);
  EXPECT_DOUBLE_EQ(c.rho1, 0.6);
  EXPECT_DOUBLE_EQ(c.rho2, 0.6);

  EXPECT_THROW((void)two_cycle_rmsa(2.5, 1.0, 1.0), DomainError);
}

TEST(TwoCycle, OddLimitAgainstSimulationOracle) {
  auto g = oracle::rng(24);
  for (int i = 0; i < 20; ++i) {
    const double d = oracle::uniform(g, 0.1, 2.0);
    const double rm1 = oracle::uniform(g, 0.1, 3.0), r0 = oracle::uniform(g, 0.1, 3.0);
    const TwoCycle tc = two_cycle_rmsa(d, rm1, r0);
    const auto r = oracle::rmsa(d, rm1, r0, 100000);
    // r[k] is r_{k-1}; r.back() is r_{100000}, an even term.
    EXPECT_NEAR(r[r.size() - 2], tc.rho1, 1e-6);
    EXPECT_NEAR(r.back(), tc.rho2, 1e-6);
  }
}

TEST(Period3, CurveMap) {
  EXPECT_TRUE(period3_witness(6.26).found);
  EXPECT_TRUE(period3_witness(7.0).found);
  EXPECT_FALSE(period3_witness(1.0).found);
  const Period3Witness w = period3_witness(6.5);
  ASSERT_TRUE(w.found);
  EXPECT_GT(w.point, 1.0);
  EXPECT_LT(w.point, 3.25);
  EXPECT_LT(w.residual, 1e-9);
  EXPECT_GT(w.fixed_gap, 1e-6);
  const double g3 = curve_map(curve_map(curve_map(w.point, 6.5), 6.5), 6.5);
  EXPECT_NEAR(g3, w.point, 1e-9);
}

TEST(Period3, FMapVariant) {
  const Period3Witness w =
      period3_witness([](double r) { return f_map(r, {3.6, 1.0}); }, 1e-6, 12.0, 10000);
  EXPECT_TRUE(w.found);
}

TEST(OddPeriods, Examples) {
  // r0 = 3.5 sits in a chaotic band: nothing detected, nothing odd.
  const OddPeriodReport a = odd_period_exclusion(4.5, 2.25, 3.5);
  EXPECT_TRUE(a.exclusion_applies);
  if (a.period) EXPECT_EQ(*a.period % 2, 0u);
  EXPECT_TRUE(a.consistent);

  const OddPeriodReport a4 = odd_period_exclusion(4.5, 2.25, 3.0);
  EXPECT_EQ(a4.period, std::optional<std::size_t>(4));
  EXPECT_TRUE(a4.consistent);

  const OddPeriodReport b = odd_period_exclusion(1.5, 0.3, 1.0);
  EXPECT_EQ(b.period, std::optional<std::size_t>(2));

  const double rm1 = 1.3;
  const OddPeriodReport c = odd_period_exclusion(6.5, rm1, rm1 * std::exp(3.25 - rm1));
  EXPECT_TRUE(c.on_curve);
  EXPECT_FALSE(c.exclusion_applies);
  EXPECT_TRUE(c.consistent);
}

TEST(Embed, Examples) {
  const EmbedReport a = embed_first_order(1.0, 0.5, 1.0, 200);
  EXPECT_LT(a.max_residual, 1e-9);
  EXPECT_DOUBLE_EQ(a.d, 1.5);

  const EmbedReport b = embed_first_order(1.1, 1.1, 0.4, 100);
  EXPECT_TRUE(b.on_curve);
  EXPECT_LT(b.max_residual, 1e-9);

  const EmbedReport c = embed_first_order(0.9, 0.9, 0.9, 50);
  for (double u : c.first_order) EXPECT_NEAR(u, 0.9, 1e-15);
  EXPECT_THROW((void)embed_first_order(1, 1, 0.0, 5), DomainError);
}

TEST(Linearization, OriginOfFold) {
  for (double a : {-0.5, 0.3, 1.7}) {
    const auto ev = eigenvalues(fold_state_jacobian(a, 1.0, 1.0, 0.0, 0.0));
    EXPECT_NEAR(ev[0].real(), -std::exp(a / 2), 1e-12);
    EXPECT_NEAR(ev[1].real(), std::exp(a / 2), 1e-12);
  }
}

TEST(Linearization, ReducedFixedPoint) {
  // Characteristic polynomial at (d/2, d/2): lambda^2 + (d/2) lambda - (1 - d/2).
  for (double d : {0.5, 1.5, 3.0}) {
    const auto ev = eigenvalues(reduced_state_jacobian(d, d / 2, d / 2));
    EXPECT_NEAR(ev[0].real(), -1.0, 1e-12);
    EXPECT_NEAR(ev[1].real(), 1.0 - d / 2, 1e-12);
  }
}
