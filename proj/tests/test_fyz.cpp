#include <gtest/gtest.h>

#include <cmath>

#include "robrisk/fyz.hpp"
#include "robrisk/special.hpp"

using namespace robrisk;

TEST(Fyz, ContextValidation) {
  EXPECT_THROW((FyzContext{-0.1, 10}.validate()), std::invalid_argument);
  EXPECT_THROW((FyzContext{0.5, 10}.validate()), std::invalid_argument);
  EXPECT_THROW((FyzContext{0.1, 0}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((FyzContext{0.0, 1}.validate()));
}

TEST(Fyz, TanhScoreValues) {
  const FyzScore s{1.0, 0.5, 2.0, 1.0};
  EXPECT_EQ(eval_tanh_score(s, 0.0), 0.0);
  EXPECT_NEAR(eval_tanh_score(s, 3.0), std::tanh(2.0) + 0.5 * (2.0 - std::tanh(2.0)), 1e-15);
  EXPECT_DOUBLE_EQ(eval_tanh_score(s, -1.3), -eval_tanh_score(s, 1.3));
  EXPECT_NEAR(eval_tanh_score(FyzScore{1.0, 0.0, 1.0, 50.0}, 1.0), 1.0, 1e-12);
  EXPECT_EQ(eval_tanh_score_deriv(s, 2.5), 0.0);
  const double h = 1e-6;
  for (double x : {-1.5, 0.2, 1.1})
    EXPECT_NEAR((eval_tanh_score(s, x + h) - eval_tanh_score(s, x - h)) / (2 * h), eval_tanh_score_deriv(s, x), 1e-8);
}

TEST(Fyz, TanhMonotonicity) {
  EXPECT_TRUE(tanh_score_monotone(FyzScore{1.0, 0.5, 2.0, 1.0}));
  EXPECT_FALSE(tanh_score_monotone(FyzScore{-1.0, 0.1, 3.0, 2.0}));
}

TEST(Fyz, BiasZeroWithoutContamination) {
  EXPECT_EQ(fyz_bias(hampel_score(make_hampel(1.0)), FyzContext{0.0, 30}), 0.0);
  EXPECT_EQ(fyz_bias(tanh_score(FyzScore{0.6, 0.8, 1.5, 1.2}), FyzContext{0.0, 30}), 0.0);
}

TEST(Fyz, BiasFirstOrder) {
  const HampelIC ic = make_hampel(1.0);
  for (double eps : {0.001, 0.01, 0.03}) {
    const double B = fyz_bias(hampel_score(ic), FyzContext{eps, 30});
    EXPECT_NEAR(B, eps * ic.b, 10 * eps * eps) << eps;
  }
}

TEST(Fyz, BiasByBisection) {
  const HampelIC ic = make_hampel(1.339);
  const double eps = 0.1;
  const auto L = [&](double beta) {
    const double c = ic.c;
    // E clamp(X - beta, -c, c) for X ~ N(0,1) in closed form.
    const double u = c + beta, l = -c + beta;
    const double mid = -(std_normal_pdf(u) - std_normal_pdf(l)) - beta * (std_normal_cdf(u) - std_normal_cdf(l));
    return ic.A * (mid + c * std_normal_sf(u) - c * std_normal_cdf(l));
  };
  double lo = 0.0, hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    ((1 - eps) * L(m) + eps * ic.b > 0 ? lo : hi) = m;
  }
  EXPECT_NEAR(fyz_bias(hampel_score(ic), FyzContext{eps, 30}), 0.5 * (lo + hi), 1e-9);
}

TEST(Fyz, BiasIncreasingInEps) {
  const BoundedScore sc = hampel_score(make_hampel(1.339));
  double prev = 0.0;
  for (int i = 1; i <= 30; ++i) {
    const double B = fyz_bias(sc, FyzContext{0.01 * i, 30});
    EXPECT_GT(B, prev);
    prev = B;
  }
}

TEST(Fyz, SideSymmetry) {
  const BoundedScore sc = hampel_score(make_hampel(0.9));
  const FyzContext ctx{0.08, 50};
  EXPECT_NEAR(fyz_bias(sc, ctx, 1), -fyz_bias(sc, ctx, -1), 1e-12);
  EXPECT_NEAR(fyz_risk(sc, ctx, 1), fyz_risk(sc, ctx, -1), 1e-12);
}

TEST(Fyz, VarianceIdealModel) {
  EXPECT_NEAR(fyz_variance(hampel_score(make_hampel(40.0)), FyzContext{0.0, 10}), 1.0, 1e-9);
  for (double c : {0.5, 1.0, 2.0}) {
    const HampelIC ic = make_hampel(c);
    EXPECT_NEAR(fyz_variance(hampel_score(ic), FyzContext{0.0, 10}), ideal_variance(ic), 1e-6) << c;
  }
  EXPECT_NEAR(fyz_risk(hampel_score(make_hampel(40.0)), FyzContext{0.0, 100}), 0.01, 1e-10);
}

TEST(Fyz, ContinuityAtZero) {
  const BoundedScore sc = tanh_score(FyzScore{0.6, 0.8, 1.5, 1.2});
  const double r0 = fyz_risk(sc, FyzContext{0.0, 40});
  EXPECT_NEAR(fyz_risk(sc, FyzContext{1e-7, 40}), r0, 1e-6);
  const double inf = std::numeric_limits<double>::infinity();
  const auto sq = [&](double x) { return sc.psi(x) * sc.psi(x) * std_normal_pdf(x); };
  const double e2 = integrate(sq, -inf, -1.5) + integrate(sq, -1.5, 1.5) + integrate(sq, 1.5, inf);
  const double ed = integrate([&](double x) { return sc.dpsi(x) * std_normal_pdf(x); }, -1.5, 1.5);
  EXPECT_NEAR(r0, e2 / (ed * ed) / 40, 1e-8);
}

TEST(Fyz, HampelRiskComparableToExpansion) {
  const double r = 0.5;
  const long n = 30;
  const HampelIC ic = make_hampel(0.8);
  const double lg = fyz_risk(hampel_score(ic), FyzContext{r / std::sqrt(double(n)), n});
  const double first = (r * r * ic.b * ic.b + ideal_variance(ic)) / n;
  EXPECT_GT(lg / first, 0.5);
  EXPECT_LT(lg / first, 2.0);
}

TEST(Fyz, OptimalHampelClipping) {
  const double c = fyz_optimal_hampel_c(0.5, 100);
  const FyzContext ctx{0.05, 100};
  const double at = fyz_risk(hampel_score(make_hampel(c)), ctx);
  EXPECT_LE(at, fyz_risk(hampel_score(make_hampel(c * 1.05)), ctx));
  EXPECT_LE(at, fyz_risk(hampel_score(make_hampel(c * 0.95)), ctx));
}

TEST(Fyz, OptimizerNotWorseThanHampel) {
  const FyzOptimum opt = fyz_optimize(0.5, 100, 3);
  EXPECT_LE(opt.risk, opt.hampel_risk * (1 + 1e-9));
  EXPECT_NEAR(opt.score.a * opt.score.a + opt.score.b * opt.score.b, 1.0, 1e-12);
  EXPECT_GT(opt.c_hampel, 0.0);
  EXPECT_TRUE(tanh_score_monotone(opt.score));
}
