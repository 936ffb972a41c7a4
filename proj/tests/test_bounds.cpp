#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "robrisk/bounds.hpp"

using namespace robrisk;

TEST(Bounds, HoeffdingValues) {
  EXPECT_NEAR(hoeffding_bound(1, 0.5, 0.25), std::pow(2.0 / 3.0, 0.75) * std::pow(2.0, 0.25), 1e-14);
  EXPECT_NEAR(hoeffding_bound(1, 0.5, 0.25), 0.8774, 1e-4);
  EXPECT_NEAR(hoeffding_bound(50, 0.3, 1e-12), 1.0, 1e-9);
  EXPECT_GE(hoeffding_bound(100, 0.1, 0.1), binomial_upper_tail(100, 0.1, 20));
}

TEST(Bounds, HoeffdingDomain) {
  EXPECT_THROW(hoeffding_bound(0, 0.5, 0.1), std::invalid_argument);
  EXPECT_THROW(hoeffding_bound(10, 0.0, 0.1), std::invalid_argument);
  EXPECT_THROW(hoeffding_bound(10, 0.5, 0.5), std::invalid_argument);
  EXPECT_THROW(hoeffding_bound(10, 0.5, 0.0), std::invalid_argument);
}

TEST(Bounds, HoeffdingDominatesRandom) {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<long> nd(1, 300);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const long n = nd(gen);
    const double mu = 0.01 + 0.98 * u(gen);
    const double eps = (1.0 - mu) * (0.01 + 0.98 * u(gen));
    const TailBoundReport rep = tail_bound_report(n, mu, eps);
    EXPECT_LE(rep.exact, rep.bound * (1 + 1e-12)) << n << " " << mu << " " << eps;
    EXPECT_GE(rep.exact, 0.0);
    EXPECT_LE(rep.bound, 1.0);
  }
}

TEST(Bounds, HoeffdingDecreasingInEps) {
  double prev = 1.0;
  for (double e = 0.02; e < 0.6; e += 0.02) {
    const double v = hoeffding_bound(40, 0.35, e);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(Bounds, Kcal) {
  EXPECT_EQ(kcal(1.0), 0.0);
  for (double d = 0.01; d <= 0.5; d += 0.01) {
    EXPECT_GE(kcal(1 + d), d * d / 3);
    EXPECT_LE(kcal(1 + d), d * d / 2);
  }
}

TEST(Bounds, BinomialOvershoot) {
  EXPECT_NEAR(binomial_overshoot_bound(100, 0.5, 2.0), std::exp(-(2 * std::log(2.0) - 1) * 5), 1e-14);
  EXPECT_NEAR(binomial_overshoot_bound(100, 0.5, 1 + 1e-9), 1.0, 1e-9);
  const double exact = binomial_upper_tail(100, 0.05, 11);  // P(K > 10)
  EXPECT_LE(exact, binomial_overshoot_bound(100, 0.5, 2.0));
  double prev = 1.0;
  for (double k = 1.1; k < 3.0; k += 0.1) {
    const double v = binomial_overshoot_bound(200, 0.6, k);
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_THROW(binomial_overshoot_bound(100, 0.5, 1.0), std::invalid_argument);
  EXPECT_THROW(binomial_overshoot_bound(4, 1.0, 2.5), std::invalid_argument);
}

TEST(Bounds, TruncatedMoment) {
  EXPECT_DOUBLE_EQ(truncated_moment_bound(100, 0.5, 2.0, 0), binomial_overshoot_bound(100, 0.5, 2.0));
  EXPECT_NEAR(truncated_moment_bound(100, 0.5, 2.0, 2), 1e4 * binomial_overshoot_bound(100, 0.5, 2.0), 1e-9);
  for (long n : {20L, 50L, 100L, 200L})
    for (double r : {0.3, 0.8})
      for (double k : {1.5, 2.5}) {
        if (k * r / std::sqrt(double(n)) >= 1.0) continue;
        const double t = k * r * std::sqrt(double(n));
        EXPECT_LE(binomial_truncated_moment(n, r / std::sqrt(double(n)), t, 2), truncated_moment_bound(n, r, k, 2));
      }
}

TEST(Bounds, ExactTailBySummation) {
  const long n = 40;
  const double p = 0.3;
  double direct = 0.0, moment = 0.0;
  for (long k = 15; k <= n; ++k) {
    const double lp = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * std::log(p) +
                      (n - k) * std::log1p(-p);
    direct += std::exp(lp);
    moment += double(k) * k * std::exp(lp);
  }
  EXPECT_NEAR(binomial_upper_tail(n, p, 15), direct, 1e-14);
  EXPECT_NEAR(binomial_truncated_moment(n, p, 14.5, 2), moment, 1e-10);
  EXPECT_DOUBLE_EQ(binomial_upper_tail(n, p, 0), 1.0);
  EXPECT_DOUBLE_EQ(binomial_upper_tail(n, p, n + 1), 0.0);
}
