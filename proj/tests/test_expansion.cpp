#include <gtest/gtest.h>

#include <cmath>

#include "robrisk/expansion.hpp"
#include "robrisk/optclip.hpp"

using namespace robrisk;

namespace {

RiskExpansion expand(double c, double r, const SampleSize& n) {
  const HampelIC ic = make_hampel(c);
  return risk_expansion(ic, moment_coeffs(ic), NeighborhoodSpec{r, n, 0.5});
}

}  // namespace

TEST(SampleSizeType, Basics) {
  const SampleSize inf = SampleSize::infinite();
  EXPECT_TRUE(inf.is_infinite());
  EXPECT_EQ(inf.inv_sqrt(), 0.0);
  EXPECT_EQ(inf.to_string(), "inf");
  EXPECT_THROW((void)inf.value(), std::logic_error);
  const SampleSize n = SampleSize::finite(25);
  EXPECT_EQ(n.value(), 25);
  EXPECT_DOUBLE_EQ(n.inv_sqrt(), 0.2);
  EXPECT_DOUBLE_EQ(n.sqrt(), 5.0);
  EXPECT_THROW(SampleSize::finite(0), std::invalid_argument);
}

TEST(Expansion, FirstOrderValues) {
  EXPECT_NEAR(asmse_fo(make_hampel(solve_c0(0.25)), 0.25), 1.220, 5e-4);
  EXPECT_NEAR(asmse_fo(make_hampel(solve_c0(1.0)), 1.0), 2.964, 5e-4);
  const HampelIC ic = make_hampel(0.9);
  EXPECT_DOUBLE_EQ(asmse_fo(ic, 0.0), ideal_variance(ic));
  EXPECT_NEAR(asmse_fo(ic, moment_coeffs(ic), 0.4), asmse_fo(ic, 0.4), 1e-10);
}

TEST(Expansion, A1Symmetric) {
  const HampelIC ic = make_hampel(1.1);
  const MomentCoeffs mc = moment_coeffs(ic);
  EXPECT_NEAR(a1_term(ic, mc, 0.0), mc.v0 * mc.v0 + ic.b * ic.b, 1e-14);
  for (double r : {0.0, 0.3, 1.0})
    EXPECT_NEAR(a1_general(mc, ic.b, r, 1), a1_term(ic, mc, r), 1e-12);
  EXPECT_NEAR(asmse_so(make_hampel(1.611), 0.1, SampleSize::finite(30)), 1.140, 5e-4);
}

TEST(Expansion, A2Symmetric) {
  const HampelIC ic = make_hampel(0.8);
  const MomentCoeffs mc = moment_coeffs(ic);
  const double v0 = mc.v0;
  EXPECT_NEAR(a2_term(ic, mc, 0.0), 2.0 / 3.0 * v0 * v0 * v0 * mc.rho1 + std::pow(v0, 4) * (3 * mc.v2t + mc.l3), 1e-14);
  for (double r : {0.0, 0.25, 0.8})
    EXPECT_NEAR(a2_general(mc, ic.b, r, 1), a2_term(ic, mc, r), 1e-12);
  const HampelIC id = make_hampel(40.0);
  EXPECT_NEAR(a2_term(id, moment_coeffs(id), 0.0), 0.0, 1e-6);
}

TEST(Expansion, RiskExpansionTableValues) {
  const RiskExpansion e0 = expand(solve_c0(0.1), 0.1, SampleSize::infinite());
  EXPECT_NEAR(e0.fo, 1.054, 5e-4);
  EXPECT_DOUBLE_EQ(e0.so, e0.fo);
  EXPECT_DOUBLE_EQ(e0.to, e0.fo);
  EXPECT_NEAR(expand(0.746, 0.5, SampleSize::finite(30)).so, 2.006, 5e-4);
  EXPECT_NEAR(expand(0.320, 1.0, SampleSize::finite(5)).so, 5.761, 1e-3);
}

TEST(Expansion, OrderNesting) {
  for (double r : {0.1, 0.5, 1.0}) {
    for (long n : {5L, 30L, 100L}) {
      const RiskExpansion e = expand(0.9, r, SampleSize::finite(n));
      EXPECT_NEAR(e.so - e.fo, r / std::sqrt(double(n)) * e.A1, 1e-12);
      EXPECT_NEAR(e.to - e.so, e.A2 / double(n), 1e-12);
      EXPECT_GE(e.fo, std::pow(moment_coeffs(make_hampel(0.9)).v0, 2));
    }
  }
}

TEST(Expansion, DirectSymmetricFormAgrees) {
  for (double c : {0.3, 0.8, 1.5}) {
    const HampelIC ic = make_hampel(c);
    const MomentCoeffs mc = moment_coeffs(ic);
    for (double r : {0.1, 0.5, 1.0}) {
      for (long n : {5L, 30L, 1000L}) {
        const RiskExpansion e = risk_expansion(ic, mc, NeighborhoodSpec{r, SampleSize::finite(n), 0.5});
        EXPECT_NEAR(symmetric_risk_direct(ic, mc, r, SampleSize::finite(n)), e.to, 1e-12 * e.to);
      }
    }
  }
}

TEST(Expansion, ClassicalLimit) {
  const HampelIC ic = make_hampel(40.0);
  const RiskExpansion e = risk_expansion(ic, moment_coeffs(ic), NeighborhoodSpec{0.0, SampleSize::finite(30), 0.5});
  EXPECT_NEAR(e.to, 1.0, 1e-6);
  EXPECT_NEAR(ideal_model_risk(moment_coeffs(ic), SampleSize::finite(30)), 1.0, 1e-6);
}

TEST(Expansion, UniqueInteriorMinimumOfSo) {
  for (double r : {0.1, 0.5, 1.0}) {
    const SampleSize n = SampleSize::finite(30);
    int turns = 0;
    double prev = asmse_so(make_hampel(0.01), r, n);
    double slope_prev = -1.0;
    for (int i = 2; i <= 500; ++i) {
      const double c = 0.01 * i;
      const double cur = asmse_so(make_hampel(c), r, n);
      const double slope = cur - prev;
      if (slope_prev < 0.0 && slope > 0.0) ++turns;
      if (slope != 0.0) slope_prev = slope;
      prev = cur;
    }
    EXPECT_EQ(turns, 1) << r;
  }
}

TEST(Expansion, ContaminationSide) {
  const HampelIC ic = make_hampel(1.0);
  const MomentCoeffs mc = moment_coeffs(ic);
  const NeighborhoodSpec nb{0.5, SampleSize::finite(30), 0.5};
  EXPECT_EQ(contamination_side(ic, mc, nb), ContaminationSide::tie);
  EXPECT_EQ(contamination_side(ScoreRange{-2.0, 1.5}, mc, nb), ContaminationSide::left);
  EXPECT_EQ(contamination_side(ScoreRange{-1.5, 2.0}, mc, nb), ContaminationSide::right);
  EXPECT_EQ(to_string(ContaminationSide::tie), "tie");
}

TEST(Expansion, EffectiveRadiusCapped) {
  const NeighborhoodSpec nb{5.0, SampleSize::finite(4), 0.5};
  EXPECT_DOUBLE_EQ(nb.effective_radius(), 2.0);
  EXPECT_THROW((NeighborhoodSpec{-0.1, SampleSize::finite(4), 0.5}.validate()), std::invalid_argument);
  EXPECT_THROW((NeighborhoodSpec{0.1, SampleSize::finite(4), 0.7}.validate()), std::invalid_argument);
}
