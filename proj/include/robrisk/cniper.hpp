#pragma once

// Cniper points: the smallest Dirac contamination location at which the sample
// mean is beaten by the optimally robust Hampel M-estimator, together with the
// detectability of such contamination by outlier-count tests.

#include <utility>
#include <vector>

#include "robrisk/expansion.hpp"
#include "robrisk/radius.hpp"

namespace robrisk {

struct CniperReport {
  double x = 0.0;
  RiskOrder order = RiskOrder::first;
  SampleSize n = SampleSize::infinite();
  double r = 0.0;
  double c = 0.0;                ///< clipping height of the robust reference estimator
  double p0 = 0.0;               ///< Phi(-x)
  double qn = 0.0;               ///< p0 + r/sqrt(n) (1 - p0)
  double eps_inf = 0.0;          ///< asymptotic minimax test risk
  double eps_n = 0.0;            ///< finite-n minimax test risk (eps_inf when n = inf)
  double beta_complement = 0.0;  ///< type-II error of the level-0.05 test
};

struct BinomialTestResult {
  double eps_n = 0.5;            ///< common error of the equal-error randomized test
  double beta_complement = 0.0;  ///< type-II error at the requested level
};

/// sqrt(M0 - 1) / r. Throws std::domain_error if M0 <= 1.
double cniper_fo(double r, double M0);

/// Second-order cniper point for the Hampel estimator with clipping c1(r, n).
/// n = inf reduces to cniper_fo with M0 the f-o maximal MSE at c0(r).
double cniper_so(double r, const SampleSize& n);

/// Phi(-(r/2) sqrt((1 - p0)/p0)).
double minimax_test_risk_fo(double r, double p0);

/// Type-II error Phi(z_{1-alpha} - r sqrt((1 - p0)/p0)) of the asymptotic level-alpha test.
double type2_fo(double r, double p0, double alpha = 0.05);

/// Exact randomized Neyman-Pearson tests of Bin(n, p0) against Bin(n, qn).
BinomialTestResult binomial_np_test(long n, double p0, double qn, double alpha = 0.05);

/// Cniper point and test risks at radius r. Second order with finite n uses
/// c1(r, n); otherwise c0(r).
CniperReport cniper_report(double r, const SampleSize& n);

/// Same with r the unrestricted minimax radius at n.
CniperReport cniper_at_minimax_radius(const SampleSize& n, const RadiusOptions& opt = {});

/// Checks that no Hampel estimator from c_grid does better than the optimal one
/// under the cniper contamination Q_n(x*). Clipped grid estimators (c <= x*) are
/// compared by maximal risk of the matching order; for c > x* the contaminated
/// point lies in the linear zone and |A(c) x*| >= |x*| is required. At first
/// order the linear-zone risk r^2 A^2 x*^2 + v0^2 is also compared directly.
bool saddlepoint_check(double r, const SampleSize& n, const std::vector<double>& c_grid);

}  // namespace robrisk
