#pragma once

// Exponential tail bounds for sums of bounded variables and binomial counts,
// with exact binomial tails for comparison.

namespace robrisk {

struct TailBoundReport {
  long n = 0;
  double mu = 0.0;
  double eps = 0.0;
  double bound = 1.0;  ///< Hoeffding bound on P(mean - mu >= eps)
  double exact = 0.0;  ///< P(Bin(n, mu)/n - mu >= eps)
  double kcal = 0.0;   ///< k log k + 1 - k at k = 1 + eps/mu
};

/// {(mu/(mu+eps))^(mu+eps) ((1-mu)/(1-mu-eps))^(1-mu-eps)}^n for [0,1]-valued
/// variables with mean mu. Requires 0 < mu < 1, 0 < eps < 1 - mu, n >= 1.
double hoeffding_bound(long n, double mu, double eps);

/// k log k + 1 - k.
double kcal(double k1);

/// exp(-kcal(k1) r sqrt(n)), a bound on P(Bin(n, r/sqrt n) > k1 r sqrt n).
/// Requires k1 > 1, r > 0 and k1 r / sqrt(n) < 1.
double binomial_overshoot_bound(long n, double r, double k1);

/// n^j binomial_overshoot_bound(n, r, k1), dominating E[K^j; K > k1 r sqrt n].
double truncated_moment_bound(long n, double r, double k1, int j);

/// P(Bin(n, p) >= k), summed in log space from the far end of the tail.
double binomial_upper_tail(long n, double p, long k);

/// E[K^j; K > t] for K ~ Bin(n, p).
double binomial_truncated_moment(long n, double p, double t, int j);

TailBoundReport tail_bound_report(long n, double mu, double eps);

}  // namespace robrisk
