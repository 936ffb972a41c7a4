#include "robrisk/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace robrisk {

namespace {

constexpr long kMaxExactN = 100000;

double log_binom_pmf(long n, double p, long k) {
  const double lc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  const double a = k == 0 ? 0.0 : k * std::log(p);
  const double b = k == n ? 0.0 : (n - k) * std::log1p(-p);
  return lc + a + b;
}

double log_sum_exp(const std::vector<double>& terms) {
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}

void check_overshoot_args(long n, double r, double k1) {
  if (n < 1) throw std::invalid_argument("binomial bound: n must be >= 1");
  if (!(r > 0.0)) throw std::invalid_argument("binomial bound: r must be positive");
  if (!(k1 > 1.0)) throw std::invalid_argument("binomial bound: k1 must exceed 1");
  if (!(k1 * r / std::sqrt(static_cast<double>(n)) < 1.0))
    throw std::invalid_argument("binomial bound: k1 r / sqrt(n) must be < 1");
}

}  // namespace

double hoeffding_bound(long n, double mu, double eps) {
  if (n < 1) throw std::invalid_argument("hoeffding_bound: n must be >= 1");
  if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("hoeffding_bound: mu must lie in (0, 1)");
  if (!(eps > 0.0 && eps < 1.0 - mu)) throw std::invalid_argument("hoeffding_bound: eps must lie in (0, 1 - mu)");
  const double a = mu + eps;
  const double log_term = a * std::log(mu / a) + (1.0 - a) * std::log((1.0 - mu) / (1.0 - a));
  return std::exp(n * log_term);
}

double kcal(double k1) {
  if (!(k1 > 0.0)) throw std::invalid_argument("kcal: k1 must be positive");
  return k1 * std::log(k1) + 1.0 - k1;
}

double binomial_overshoot_bound(long n, double r, double k1) {
  check_overshoot_args(n, r, k1);
  return std::exp(-kcal(k1) * r * std::sqrt(static_cast<double>(n)));
}

double truncated_moment_bound(long n, double r, double k1, int j) {
  if (j < 0) throw std::invalid_argument("truncated_moment_bound: j must be >= 0");
  return std::pow(static_cast<double>(n), j) * binomial_overshoot_bound(n, r, k1);
}

double binomial_upper_tail(long n, double p, long k) {
  if (n < 0 || n > kMaxExactN) throw std::invalid_argument("binomial_upper_tail: n out of range");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial_upper_tail: p must lie in [0, 1]");
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  // Sum the smaller side and complement if needed.
  const double mean = n * p;
  std::vector<double> terms;
  if (k > mean) {
    for (long i = n; i >= k; --i) terms.push_back(log_binom_pmf(n, p, i));
    return std::min(1.0, std::exp(log_sum_exp(terms)));
  }
  for (long i = 0; i < k; ++i) terms.push_back(log_binom_pmf(n, p, i));
  return std::max(0.0, 1.0 - std::exp(log_sum_exp(terms)));
}

double binomial_truncated_moment(long n, double p, double t, int j) {
  if (n < 0 || n > kMaxExactN) throw std::invalid_argument("binomial_truncated_moment: n out of range");
  if (j < 0) throw std::invalid_argument("binomial_truncated_moment: j must be >= 0");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("binomial_truncated_moment: p must lie in (0, 1)");
  std::vector<double> terms;
  const long k0 = std::max(0L, static_cast<long>(std::floor(t)) + 1);
  for (long k = n; k >= k0; --k) {
    if (k == 0 && j > 0) continue;
    terms.push_back(log_binom_pmf(n, p, k) + (j == 0 ? 0.0 : j * std::log(static_cast<double>(k))));
  }
  return std::exp(log_sum_exp(terms));
}

TailBoundReport tail_bound_report(long n, double mu, double eps) {
  TailBoundReport rep;
  rep.n = n;
  rep.mu = mu;
  rep.eps = eps;
  rep.bound = hoeffding_bound(n, mu, eps);
  // mean - mu >= eps  <=>  K >= n (mu + eps); guard against rounding of the product.
  const double kreal = n * (mu + eps);
  const long k = static_cast<long>(std::ceil(kreal - 1e-9 * std::max(1.0, kreal)));
  rep.exact = binomial_upper_tail(n, mu, k);
  rep.kcal = kcal(1.0 + eps / mu);
  return rep;
}

}  // namespace robrisk
