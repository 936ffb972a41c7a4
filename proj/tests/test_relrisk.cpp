#include <gtest/gtest.h>

#include <cmath>

#include "robrisk/optclip.hpp"
#include "robrisk/relrisk.hpp"

using namespace robrisk;

TEST(RelRisk, UnitAtC0) {
  for (double r : {0.1, 0.5, 1.0}) {
    for (long n : {5L, 30L, 1000L}) EXPECT_DOUBLE_EQ(rel_mse1(solve_c0(r), r, SampleSize::finite(n)), 1.0);
    EXPECT_DOUBLE_EQ(rel_mse1(solve_c0(r), r, SampleSize::infinite()), 1.0);
    EXPECT_DOUBLE_EQ(rel_mse0(solve_c0(r), r), 1.0);
  }
  EXPECT_DOUBLE_EQ(ratio_deviation_pct(1.0), 0.0);
}

TEST(RelRisk, TableCell) {
  const double x = rel_mse1(solve_c1(0.1, 30), 0.1, SampleSize::finite(30));
  EXPECT_LT(x, 1.0);
  EXPECT_NEAR(ratio_deviation_pct(x), 0.939, 0.01);
}

TEST(RelRisk, DeviationOrientationFree) {
  EXPECT_NEAR(ratio_deviation_pct(1.02), 2.0, 1e-12);
  EXPECT_NEAR(ratio_deviation_pct(1.0 / 1.02), 2.0, 1e-12);
}

TEST(RelRisk, RelMse0AtLeastOne) {
  for (double r : {0.1, 0.5, 1.0})
    for (double c : {0.2, 0.6, 1.2, 2.5}) EXPECT_GE(rel_mse0(c, r), 1.0 - 1e-12);
}

TEST(RelRisk, DeltaC) {
  const HampelIC ic = make_hampel(2.0);
  const double v2 = ideal_variance(ic);
  EXPECT_NEAR(delta_c(2.0, 0.5), (ic.b * ic.b - v2) / (0.25 * ic.b * ic.b + v2), 1e-12);
  // b^2 > v0^2 for every Hampel IC since |psi| <= b with strict inequality on a set of positive mass.
  for (double c : {0.1, 0.7, 3.0}) EXPECT_GT(delta_c(c, 0.3), 0.0);
}

TEST(RelRisk, ScalingClaim) {
  const SampleSize n = SampleSize::finite(10000);
  for (double r : {0.1, 0.5, 1.0}) {
    const double c0 = solve_c0(r);
    for (double f : {0.8, 0.9, 1.1, 1.25}) {
      const double c = c0 * f;
      const double lhs = rel_mse1(c, r, n);
      const double rhs = rel_mse0(c, r) * (1.0 + r * n.inv_sqrt() * (delta_c(c, r) - delta_c(c0, r)));
      EXPECT_LE(std::abs(lhs - rhs), 1e-3) << r << " " << f;
    }
  }
}

TEST(RelRisk, EnvelopeZeroWidth) {
  for (double r : {0.1, 1.0, 2.5}) EXPECT_NEAR(envelope_at(0.0, r), 0.0, 1e-14);
}

TEST(RelRisk, EnvelopeMonotoneInRho) {
  for (double r : {0.2, 0.5, 1.5}) {
    const double e1 = envelope_at(0.05, r), e2 = envelope_at(0.1, r), e3 = envelope_at(0.2, r);
    EXPECT_GE(e1, 0.0);
    EXPECT_LE(e1, e2 + 1e-12);
    EXPECT_LE(e2, e3 + 1e-12);
  }
}

TEST(RelRisk, EnvelopeMaximum) {
  const EnvelopeResult e = envelope(0.1, default_envelope_grid());
  EXPECT_NEAR(e.max, 0.065, 0.003);
  ASSERT_EQ(e.series.size(), 300u);
  for (const auto& [r, v] : e.series) EXPECT_LE(v, e.max);
  EXPECT_THROW(envelope(0.1, {}), std::invalid_argument);
}

TEST(RelRisk, EnvelopeSerialMatchesParallel) {
  const std::vector<double> grid = {0.1, 0.4, 0.9, 1.7, 2.6};
  const EnvelopeResult a = envelope(0.1, grid, 200, Exec::serial);
  const EnvelopeResult b = envelope(0.1, grid, 200, Exec::parallel);
  EXPECT_EQ(a.max, b.max);
  EXPECT_EQ(a.argmax_r, b.argmax_r);
  EXPECT_EQ(a.series, b.series);
}

TEST(RelRisk, Report) {
  const RelRiskReport rep = rel_risk_report(1.0, 0.5, SampleSize::finite(30), 0.1);
  EXPECT_GE(rep.envelope, rep.envelope_r);
  EXPECT_GE(rep.envelope_r, 0.0);
  EXPECT_DOUBLE_EQ(rep.rel0, rel_mse0(1.0, 0.5));
  EXPECT_DOUBLE_EQ(rep.rel1, rel_mse1(1.0, 0.5, SampleSize::finite(30)));
}
