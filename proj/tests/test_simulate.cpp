#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "robrisk/expansion.hpp"
#include "robrisk/optclip.hpp"
#include "robrisk/simulate.hpp"
#include "robrisk/special.hpp"

using namespace robrisk;

namespace {

long double score_sum(const std::vector<double>& xs, const HampelIC& ic, long double t) {
  long double s = 0.0L;
  for (double x : xs) s += std::clamp((long double)x - t, -(long double)ic.c, (long double)ic.c);
  return s;
}

// Midpoint of sup{t : S(t) > 0} and inf{t : S(t) < 0} by long-double bisection.
double m_estimate_oracle(const std::vector<double>& xs, const HampelIC& ic) {
  const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
  const auto edge = [&](bool strict) {
    long double lo = *mn - ic.c - 1.0, hi = *mx + ic.c + 1.0;
    for (int i = 0; i < 200; ++i) {
      const long double m = 0.5L * (lo + hi);
      const long double s = score_sum(xs, ic, m);
      ((strict ? s > 0 : s >= 0) ? lo : hi) = m;
    }
    return 0.5L * (lo + hi);
  };
  return double(0.5L * (edge(true) + edge(false)));
}

SimConfig config(double c, double r, long n, long reps) {
  SimConfig cfg;
  cfg.c = c;
  cfg.r = r;
  cfg.n = n;
  cfg.reps = reps;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST(MEstimate, TrivialSamples) {
  const HampelIC ic = make_hampel(1.0);
  EXPECT_EQ(m_estimate({0.0}, ic), 0.0);
  EXPECT_NEAR(m_estimate({-2.5, 2.5}, ic), 0.0, 1e-12);
  EXPECT_NEAR(m_estimate({0, 0, 0, 0, 1e6}, ic), 0.25, 1e-12);
  EXPECT_NEAR(m_estimate({1.0, 2.0, 3.0}, make_hampel(40.0)), 2.0, 1e-12);
  EXPECT_THROW(m_estimate({}, ic), NumericError);
}

TEST(MEstimate, PlateauMidpoint) {
  // Two clusters further apart than 2c: S vanishes on a whole interval.
  const HampelIC ic = make_hampel(0.5);
  EXPECT_NEAR(m_estimate({-3.0, 3.0}, ic), 0.0, 1e-12);
  EXPECT_NEAR(m_estimate({-3.0, -3.0, 4.0, 4.0}, ic), 0.5, 1e-12);
}

TEST(MEstimate, MatchesOracle) {
  std::mt19937_64 gen(99);
  std::normal_distribution<double> z;
  std::uniform_int_distribution<int> nd(3, 42);
  std::uniform_real_distribution<double> cd(0.05, 3.0);
  int mismatches = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = nd(gen);
    const HampelIC ic = make_hampel(cd(gen));
    std::vector<double> xs(n);
    for (double& x : xs) x = z(gen);
    const int k = trial % 4;
    for (int i = 0; i < k && i < n / 2 - 1; ++i) xs[i] = 1e6;
    const double a = m_estimate(xs, ic), b = m_estimate_oracle(xs, ic);
    if (std::abs(a - b) > 1e-9 * (1 + std::abs(b))) ++mismatches;
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(MEstimate, Equivariance) {
  const HampelIC ic = make_hampel(0.8);
  const std::vector<double> xs = {-1.2, 0.3, 0.4, 2.2, 0.9};
  std::vector<double> shifted, flipped;
  for (double x : xs) {
    shifted.push_back(x + 5.0);
    flipped.push_back(-x);
  }
  const double t = m_estimate(xs, ic);
  EXPECT_NEAR(m_estimate(shifted, ic), t + 5.0, 1e-12);
  EXPECT_NEAR(m_estimate(flipped, ic), -t, 1e-12);
}

TEST(Rng, SplitMixStreams) {
  SplitMix64 a(stream_seed(1, 0)), b(stream_seed(1, 0)), c(stream_seed(1, 1));
  const auto x = a(), y = b(), w = c();
  EXPECT_EQ(x, y);
  EXPECT_NE(x, w);
  EXPECT_NE(stream_seed(1, 5), stream_seed(2, 5));
}

TEST(Simulate, ConfigValidation) {
  EXPECT_THROW(config(1.0, 0.1, 30, 0).validate(), std::invalid_argument);
  EXPECT_THROW(config(1.0, 0.1, 0, 10).validate(), std::invalid_argument);
  EXPECT_THROW(config(1.0, 6.0, 30, 10).validate(), std::invalid_argument);
  EXPECT_THROW(config(0.0, 0.1, 30, 10).validate(), std::invalid_argument);
  SimConfig bad = config(1.0, 0.1, 30, 10);
  bad.dirac = 1.5;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_THROW(run_mse(bad), std::invalid_argument);
}

TEST(Simulate, Deterministic) {
  const SimConfig cfg = config(0.9, 0.5, 20, 20000);
  const SimResult a = run_mse(cfg, Exec::serial);
  const SimResult b = run_mse(cfg, Exec::parallel);
  const SimResult c = run_mse(cfg, Exec::parallel);
  EXPECT_EQ(a.mse, b.mse);
  EXPECT_EQ(a.mse_stderr, b.mse_stderr);
  EXPECT_EQ(a.overshoot, b.overshoot);
  EXPECT_EQ(b.mse, c.mse);
  EXPECT_EQ(a.reps_used + a.reps_rejected, cfg.reps);
  EXPECT_GT(a.mse_stderr, 0.0);
}

TEST(Simulate, IdealModel) {
  const SimConfig cfg = config(1.0, 0.0, 30, 100000);
  const SimResult res = run_mse(cfg);
  const double expect = ideal_model_risk(moment_coeffs(make_hampel(1.0)), SampleSize::finite(30));
  EXPECT_LT(std::abs(res.mse - expect), 3 * res.mse_stderr + 0.01);
  EXPECT_EQ(res.reps_rejected, 0);
}

TEST(Simulate, BreakdownConditioningAccounting) {
  SimConfig cfg = config(1.0, 1.5, 6, 20000);
  const SimResult res = run_mse(cfg);
  EXPECT_GT(res.reps_rejected, 0);
  EXPECT_EQ(res.reps_used + res.reps_rejected, cfg.reps);
}

TEST(Simulate, ConditioningNegligibleAtModerateN) {
  SimConfig cfg = config(1.0, 0.5, 30, 50000);
  const SimResult a = run_mse(cfg);
  cfg.condition_breakdown = false;
  const SimResult b = run_mse(cfg);
  EXPECT_LE(std::abs(a.mse - b.mse), a.mse_stderr);
}

TEST(Simulate, ReflectionSymmetry) {
  SimConfig cfg = config(0.746, 0.5, 30, 100000);
  const SimResult right = run_overshoot(cfg, 1.0);
  cfg.dirac = -1e6;
  cfg.seed = 8;
  const SimResult left = run_overshoot(cfg, 1.0);
  const double se = std::hypot(right.overshoot_stderr, left.undershoot_stderr);
  EXPECT_LT(std::abs(right.overshoot - left.undershoot), 3 * se);
}

TEST(Simulate, NoContaminationLargeA) {
  const SimResult res = run_overshoot(config(1.0, 0.0, 30, 20000), 5.0);
  EXPECT_EQ(res.overshoot, 0.0);
  EXPECT_EQ(res.undershoot, 0.0);
}

TEST(Simulate, GridOnCommonNumbers) {
  const SimConfig cfg = config(1.0, 0.5, 20, 5000);
  const std::vector<double> cs = {0.6, 0.9};
  const std::vector<SimResult> g = run_mse_grid(cfg, cs);
  ASSERT_EQ(g.size(), 2u);
  SimConfig one = cfg;
  one.c = 0.9;
  EXPECT_EQ(g[1].mse, run_mse(one).mse);
  const std::vector<SimResult> gs = run_mse_grid(cfg, cs, 1.0, Exec::serial);
  EXPECT_EQ(gs[0].mse, g[0].mse);
}

TEST(Simulate, ExactOptimumNearTable) {
  const auto [c_ex, mse] = optimize_c_exact(1.0, 30, 100000, 3);
  EXPECT_NEAR(c_ex, 0.286, 0.05);
  EXPECT_GT(mse, 0.0);
}

TEST(Simulate, ThirdOrderCloserThanFirstOrder) {
  for (double r : {0.1, 0.25, 0.5, 1.0}) {
    for (long n : {30L, 50L, 100L}) {
      const double c2 = solve_c2(r, n);
      const SimResult res = run_mse(config(c2, r, n, 200000));
      const HampelIC ic = make_hampel(c2);
      const RiskExpansion e = risk_expansion(ic, moment_coeffs(ic), NeighborhoodSpec{r, SampleSize::finite(n), 0.5});
      EXPECT_LT(std::abs(res.mse - e.to), std::abs(res.mse - e.fo) + 3 * res.mse_stderr) << r << " " << n;
    }
  }
}
