#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "ricker/errors.hpp"
#include "ricker/simulate.hpp"

using namespace ricker;

namespace {

RickerSystem random_system(std::mt19937_64& g, bool sigma2_zero) {
  RickerSystem sys;
  auto seq = [&](std::size_t p, double lo, double hi) {
    return PeriodicSeq::tabulate(p, [&](std::int64_t) { return oracle::uniform(g, lo, hi); });
  };
  const auto p = static_cast<std::size_t>(oracle::uniform(g, 1.0, 3.999));
  sys.alpha = seq(p, 0.0, 2.0);
  sys.beta = seq(p, 0.5, 2.0);
  sys.sigma1 = seq(p, 0.3, 1.0);
  sys.sigma2 = sigma2_zero ? PeriodicSeq(0.0) : seq(p, 0.0, 0.9);
  sys.c1 = seq(p, 0.2, 1.5);
  sys.c2 = seq(p, 0.0, 1.5);
  return sys;
}

// Hand-written planar step, independent of step_planar.
PlanarState planar_ref(PlanarState s, const RickerSystem& sys, std::int64_t n) {
  return {sys.sigma1(n) * s.y + sys.sigma2(n) * s.x,
          sys.beta(n) * s.x * std::exp(sys.alpha(n) - sys.c1(n) * s.x - sys.c2(n) * s.y)};
}

}  // namespace

TEST(StepPlanar, OriginIsFixed) {
  auto g = oracle::rng(1);
  for (int i = 0; i < 20; ++i) {
    const RickerSystem sys = random_system(g, false);
    EXPECT_EQ(step_planar({0.0, 0.0}, sys, i), (PlanarState{0.0, 0.0}));
  }
}

TEST(StepPlanar, HandEvaluations) {
  RickerSystem sys;  // sigma1 = 1, sigma2 = 0, beta = 1, alpha = 0, c1 = 1, c2 = 0
  const PlanarState s = step_planar({1.0, 1.0}, sys, 0);
  EXPECT_DOUBLE_EQ(s.x, 1.0);
  EXPECT_DOUBLE_EQ(s.y, std::exp(-1.0));

  sys.alpha = 0.7;
  sys.beta = 1.3;
  const PlanarState t = step_planar({2.0, 0.0}, sys, 5);
  EXPECT_EQ(t.x, 0.0);
  EXPECT_DOUBLE_EQ(t.y, 1.3 * 2.0 * std::exp(0.7 - 2.0));
}

TEST(StepPlanar, RejectsBadStateAndOverflows) {
  RickerSystem sys;
  EXPECT_THROW((void)step_planar({-1.0, 0.0}, sys, 0), DomainError);
  EXPECT_THROW((void)step_planar({std::nan(""), 0.0}, sys, 0), DomainError);
  sys.alpha = 800.0;
  EXPECT_THROW((void)step_planar({1.0, 0.0}, sys, 0), OverflowError);
}

TEST(IteratePlanar, ZeroStepsAndReference) {
  auto g = oracle::rng(2);
  const RickerSystem sys = random_system(g, false);
  EXPECT_EQ(iterate_planar(0.3, 0.4, sys, 0).size(), 1u);
  const PlanarOrbit o = iterate_planar(0.3, 0.4, sys, 50);
  ASSERT_EQ(o.size(), 51u);
  PlanarState s{0.3, 0.4};
  for (std::int64_t n = 0; n < 50; ++n) {
    s = planar_ref(s, sys, n);
    EXPECT_NEAR(o.at_time(n + 1).x, s.x, 1e-12 * std::max(1.0, s.x));
    EXPECT_NEAR(o.at_time(n + 1).y, s.y, 1e-12 * std::max(1.0, s.y));
  }
}

TEST(IteratePlanar, LinearSystemGrowsWithoutBound) {
  RickerSystem sys;
  sys.c1 = 0.0;
  sys.c2 = 0.0;
  sys.beta = 2.0;  // sigma1 beta e^alpha = 2 > 1 - sigma2
  const PlanarOrbit o = iterate_planar(1.0, 1.0, sys, 200);
  double mx = 0.0;
  for (const auto& s : o.states) mx = std::max(mx, s.x);
  EXPECT_GT(mx, 1e12);
}

TEST(IteratePlanar, OverflowReportsIndex) {
  RickerSystem sys;
  sys.alpha = PeriodicSeq{0.0, 0.0, 750.0};
  try {
    (void)iterate_planar(1.0, 1.0, sys, 10);
    FAIL() << "expected overflow";
  } catch (const OverflowError& e) {
    EXPECT_EQ(e.index(), 2);
  }
}

TEST(IteratePlanar, GeneratorMatchesPeriodic) {
  auto g = oracle::rng(3);
  const RickerSystem sys = random_system(g, false);
  const PlanarOrbit a = iterate_planar(1.0, 0.5, sys, 40);
  const PlanarOrbit b =
      iterate_planar(1.0, 0.5, [&](std::int64_t n) { return rates_at(sys, n); }, 40);
  EXPECT_EQ(a.states, b.states);
}

TEST(SecondOrder, MatchesPlanarProjection) {
  auto g = oracle::rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const RickerSystem sys = random_system(g, true);
    const double x0 = oracle::uniform(g, 0.01, 10.0);
    const double y0 = oracle::uniform(g, 0.01, 10.0);
    const PlanarOrbit planar = iterate_planar(x0, y0, sys, 100);
    const ScalarOrbit folded =
        iterate_second_order(planar.states[0].x, planar.states[1].x, fold_second_order(sys), 99);
    ASSERT_EQ(folded.size(), planar.size());
    for (std::size_t k = 0; k < planar.size(); ++k) {
      EXPECT_LE(oracle::rel(folded.states[k], planar.states[k].x), 1e-9) << "trial " << trial;
    }
  }
}

TEST(SecondOrder, EdgeCases) {
  FoldedParams fp{PeriodicSeq(0.5), PeriodicSeq(1.0), PeriodicSeq(1.0), PeriodicSeq(1.0)};
  const ScalarOrbit zero = iterate_second_order(0.0, 0.0, fp, 10);
  EXPECT_TRUE(std::all_of(zero.states.begin(), zero.states.end(), [](double v) { return v == 0.0; }));

  FoldedParams decay{PeriodicSeq(-0.3), PeriodicSeq(1.0), PeriodicSeq(1.0), PeriodicSeq(1.0)};
  EXPECT_LT(iterate_second_order(3.0, 2.0, decay, 1000).back(), 1e-6);

  FoldedParams dead{PeriodicSeq(0.5), PeriodicSeq(1.0), PeriodicSeq(1.0), PeriodicSeq{1.0, 0.0}};
  EXPECT_THROW((void)iterate_second_order(1.0, 1.0, dead, 5), DomainError);
}

TEST(Reduced, FixedPointAndTwoCycleMean) {
  const ReducedParams rp{PeriodicSeq(1.5)};
  const ScalarOrbit c = iterate_reduced(0.75, 0.75, rp, 100);
  for (double v : c.states) EXPECT_NEAR(v, 0.75, 1e-15);

  const ScalarOrbit o = iterate_reduced(0.3, 1.0, rp, 20000);
  const double odd = o.states[o.size() - 2];
  const double even = o.states[o.size() - 1];
  EXPECT_NEAR(odd + even, 1.5, 1e-6);
  EXPECT_GT(std::abs(odd - even), 1e-3);

  EXPECT_THROW((void)iterate_reduced(1.0, 1.0, ReducedParams{PeriodicSeq(800.0)}, 5), OverflowError);
  EXPECT_THROW((void)iterate_reduced(-1.0, 1.0, rp, 5), DomainError);
}

TEST(Reduced, MatchesOracle) {
  const ScalarOrbit o = iterate_reduced(2.25, 3.0, ReducedParams{PeriodicSeq(4.5)}, 300);
  const auto ref = oracle::rmsa(4.5, 2.25, 3.0, 300);
  ASSERT_EQ(o.size(), ref.size());
  for (std::size_t k = 0; k < ref.size(); ++k) EXPECT_EQ(o.states[k], ref[k]);
}

TEST(Scaled, GlobalAttractor) {
  auto g = oracle::rng(5);
  for (int i = 0; i < 20; ++i) {
    const double a = oracle::uniform(g, 0.1, 1.0);
    const double b = oracle::uniform(g, 0.05, 0.95);
    const ScalarOrbit o = iterate_scaled(a, b, oracle::uniform(g, 0.01, 10.0),
                                         oracle::uniform(g, 0.01, 10.0), 20000);
    EXPECT_NEAR(o.back(), a / (1.0 + b), 1e-8);
  }
}

TEST(ComparisonBound, Examples) {
  EXPECT_DOUBLE_EQ(linear_comparison_bound(1.0, 0.5, 7.0, 0.1), 2.1);
  EXPECT_DOUBLE_EQ(linear_comparison_bound(2.0, 0.9, 0.0, 0.01), 20.01);
  EXPECT_THROW((void)linear_comparison_bound(1.0, 1.0, 0.0, 0.1), DomainError);
  EXPECT_THROW((void)linear_comparison_bound(1.0, 0.0, 0.0, 0.1), DomainError);

  // Oracle: iterate u_{n+1} = 1 + 0.5 u_n from 100 by hand.
  double u = 100.0;
  std::size_t n = 0;
  while (u > 2.1) {
    u = 1.0 + 0.5 * u;
    ++n;
  }
  EXPECT_LE(n, 12u);
  EXPECT_EQ(comparison_settling_index(1.0, 0.5, 100.0, 0.1), n);
}

TEST(ComparisonBound, MonotoneDominance) {
  auto g = oracle::rng(6);
  for (int i = 0; i < 20; ++i) {
    const double alpha = oracle::uniform(g, 0.1, 2.0);
    const double beta = oracle::uniform(g, 0.1, 0.9);
    double x = oracle::uniform(g, 0.0, 10.0);
    double u = x;
    for (int k = 0; k < 200; ++k) {
      x = (alpha + beta * x) * oracle::uniform(g, 0.0, 1.0);  // any x_{n+1} <= alpha + beta x_n
      u = alpha + beta * u;
      ASSERT_LE(x, u + 1e-12);
    }
    EXPECT_LE(x, linear_comparison_bound(alpha, beta, 0.0, 1e-9));
  }
}

TEST(UniformBound, ExampleAndSoundness) {
  RickerSystem sys;
  sys.sigma2 = 0.5;
  sys.sigma1 = 1.0;
  sys.alpha = 1.0;
  sys.beta = 1.0;
  sys.c1 = 1.0;
  sys.c2 = 0.3;
  const BoundReport br = uniform_bound(sys, 1.0);
  ASSERT_TRUE(br.applicable);
  EXPECT_DOUBLE_EQ(br.m0, 1.0);
  EXPECT_DOUBLE_EQ(br.bound, 3.0);

  auto g = oracle::rng(7);
  for (int i = 0; i < 20; ++i) {
    const PlanarOrbit o =
        iterate_planar(oracle::uniform(g, 0.0, 10.0), oracle::uniform(g, 0.0, 10.0), sys, 3000);
    for (std::size_t k = 1000; k < o.size(); ++k) ASSERT_LE(o.states[k].x, br.bound + 1e-9);
  }
}

TEST(UniformBound, Inapplicable) {
  RickerSystem sys;
  sys.sigma2 = PeriodicSeq{0.5, 1.0};
  EXPECT_FALSE(uniform_bound(sys, 1.0).applicable);
  RickerSystem heavy;
  heavy.beta = PeriodicSeq{1.0, 3.0};
  heavy.c1 = 1.0;
  const BoundReport br = uniform_bound(heavy, 2.0);
  EXPECT_FALSE(br.applicable);
  EXPECT_FALSE(br.reason.empty());
}

TEST(C0, ExamplesAndSoundness) {
  RickerSystem sys;
  sys.sigma1 = 0.4;
  sys.sigma2 = 0.3;
  EXPECT_TRUE(check_c0(sys));
  EXPECT_NEAR(c0_report(sys).limsup, 0.7, 1e-15);

  auto g = oracle::rng(8);
  for (int i = 0; i < 20; ++i) {
    PlanarState s{oracle::uniform(g, 0.0, 10.0), oracle::uniform(g, 0.0, 10.0)};
    const PlanarOrbit o = iterate_planar(s.x, s.y, sys, 10000);
    EXPECT_LT(o.back().x, 1e-8);
    EXPECT_LT(o.back().y, 1e-8);
  }

  RickerSystem big;
  big.sigma2 = 0.5;
  EXPECT_FALSE(check_c0(big));

  RickerSystem edge;
  edge.beta = 0.99;
  EXPECT_TRUE(check_c0(edge));
}

TEST(C0, WindowedGenerator) {
  const C0Report r = c0_report(
      [](std::int64_t n) {
        Rates q;
        q.sigma1 = 0.5;
        q.beta = 1.0;
        q.sigma2 = n % 5 == 0 ? 0.4 : 0.1;
        return q;
      },
      0, 50);
  EXPECT_TRUE(r.windowed);
  EXPECT_NEAR(r.limsup, 0.9, 1e-15);
  EXPECT_TRUE(r.holds);
}
