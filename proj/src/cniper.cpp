#include "robrisk/cniper.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>

#include "robrisk/optclip.hpp"
#include "robrisk/special.hpp"

namespace robrisk {

namespace {

constexpr double kSaddleTol = 1e-9;

struct Reference {
  double c = 0.0;
  double b2 = 0.0;
  double v2 = 0.0;
};

Reference reference(double r, const SampleSize& n) {
  Reference ref;
  ref.c = n.is_infinite() ? solve_c0(r) : solve_c1(r, n.value());
  const HampelIC ic = make_hampel(ref.c);
  ref.b2 = ic.b * ic.b;
  ref.v2 = ideal_variance(ic);
  return ref;
}

/// Second-order maximal risk r^2 b^2 + v0^2 + (r/sqrt n) A1; first order when n = inf.
double max_risk(double b2, double v2, double r, const SampleSize& n) {
  const double fo = r * r * b2 + v2;
  return fo + r * n.inv_sqrt() * (v2 + b2 * (1.0 + 2.0 * r * r));
}

/// Rejection probabilities of the test rejecting {K > k} and {K = k} with weight
/// 1 - (u - k), k = floor(u), for u in [0, n + 1].
struct NpFamily {
  std::vector<double> pmf0;
  std::vector<double> pmf1;
  std::vector<double> upper0;  ///< P0(K >= k)
  std::vector<double> upper1;

  NpFamily(long n, double p0, double q) : pmf0(n + 1), pmf1(n + 1), upper0(n + 2, 0.0), upper1(n + 2, 0.0) {
    const boost::math::binomial_distribution<double> d0(static_cast<double>(n), p0);
    const boost::math::binomial_distribution<double> d1(static_cast<double>(n), q);
    for (long k = 0; k <= n; ++k) {
      pmf0[k] = boost::math::pdf(d0, static_cast<double>(k));
      pmf1[k] = boost::math::pdf(d1, static_cast<double>(k));
    }
    for (long k = n; k >= 0; --k) {
      upper0[k] = upper0[k + 1] + pmf0[k];
      upper1[k] = upper1[k + 1] + pmf1[k];
    }
  }

  long n() const { return static_cast<long>(pmf0.size()) - 1; }

  double type1(double u) const {
    const long k = std::min(static_cast<long>(std::floor(u)), n() + 1);
    if (k > n()) return 0.0;
    const double g = 1.0 - (u - k);
    return upper0[k + 1] + g * pmf0[k];
  }

  double type2(double u) const {
    const long k = std::min(static_cast<long>(std::floor(u)), n() + 1);
    if (k > n()) return 1.0;
    const double g = 1.0 - (u - k);
    return 1.0 - (upper1[k + 1] + g * pmf1[k]);
  }

  /// Solves f(u) = 0 for f piecewise linear on unit intervals and decreasing in u.
  template <typename F>
  double solve_linear(F&& f) const {
    long k = 0;
    while (k <= n() && f(static_cast<double>(k + 1)) > 0.0) ++k;
    if (k > n()) return static_cast<double>(n() + 1);
    const double fa = f(static_cast<double>(k));
    const double fb = f(static_cast<double>(k + 1));
    if (fa == fb) return static_cast<double>(k);
    return k + fa / (fa - fb);
  }
};

}  // namespace

double cniper_fo(double r, double M0) {
  if (!(r > 0.0)) throw std::invalid_argument("cniper_fo: r must be positive");
  if (!(M0 > 1.0)) throw std::domain_error("cniper_fo: M0 <= 1, the mean is never beaten");
  return std::sqrt(M0 - 1.0) / r;
}

double cniper_so(double r, const SampleSize& n) {
  if (!(r > 0.0)) throw std::invalid_argument("cniper_so: r must be positive");
  const Reference ref = reference(r, n);
  const double M0 = r * r * ref.b2 + ref.v2;
  if (n.is_infinite()) return cniper_fo(r, M0);
  if (n.value() < 2) throw std::invalid_argument("cniper_so: n must be >= 2");
  if (r >= n.sqrt()) throw std::invalid_argument("cniper_so: r must be < sqrt(n)");
  const double rs = r * n.inv_sqrt();
  const double num = M0 - 1.0 + rs * (M0 + ref.b2 * (r * r + 1.0) + 1.0);
  const double den = r * r * (1.0 - n.inv()) + rs;
  if (!(num > 0.0)) throw std::domain_error("cniper_so: no crossing, the mean dominates");
  return std::sqrt(num / den);
}

double minimax_test_risk_fo(double r, double p0) {
  if (!(r > 0.0)) throw std::invalid_argument("minimax_test_risk_fo: r must be positive");
  if (!(p0 > 0.0 && p0 < 1.0)) throw std::invalid_argument("minimax_test_risk_fo: p0 must lie in (0, 1)");
  return std_normal_cdf(-0.5 * r * std::sqrt((1.0 - p0) / p0));
}

double type2_fo(double r, double p0, double alpha) {
  if (!(p0 > 0.0 && p0 < 1.0)) throw std::invalid_argument("type2_fo: p0 must lie in (0, 1)");
  return std_normal_cdf(std_normal_quantile(1.0 - alpha) - r * std::sqrt((1.0 - p0) / p0));
}

BinomialTestResult binomial_np_test(long n, double p0, double qn, double alpha) {
  if (n < 1) throw std::invalid_argument("binomial_np_test: n must be >= 1");
  if (!(p0 > 0.0 && p0 <= qn && qn < 1.0)) throw std::invalid_argument("binomial_np_test: need 0 < p0 <= qn < 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("binomial_np_test: alpha must lie in (0, 1)");
  BinomialTestResult out;
  if (p0 == qn) {
    out.eps_n = 0.5;
    out.beta_complement = 1.0 - alpha;
    return out;
  }
  const NpFamily fam(n, p0, qn);
  const double u_eq = fam.solve_linear([&fam](double u) { return fam.type1(u) - fam.type2(u); });
  out.eps_n = 0.5 * (fam.type1(u_eq) + fam.type2(u_eq));
  const double u_lvl = fam.solve_linear([&fam, alpha](double u) { return fam.type1(u) - alpha; });
  out.beta_complement = fam.type2(u_lvl);
  return out;
}

CniperReport cniper_report(double r, const SampleSize& n) {
  CniperReport rep;
  rep.r = r;
  rep.n = n;
  rep.order = n.is_infinite() ? RiskOrder::first : RiskOrder::second;
  rep.c = reference(r, n).c;
  rep.x = cniper_so(r, n);
  rep.p0 = std_normal_cdf(-rep.x);
  rep.qn = rep.p0 + r * n.inv_sqrt() * (1.0 - rep.p0);
  rep.eps_inf = minimax_test_risk_fo(r, rep.p0);
  if (n.is_infinite()) {
    rep.eps_n = rep.eps_inf;
    rep.beta_complement = type2_fo(r, rep.p0);
  } else {
    const BinomialTestResult t = binomial_np_test(n.value(), rep.p0, rep.qn);
    rep.eps_n = t.eps_n;
    rep.beta_complement = t.beta_complement;
  }
  return rep;
}

CniperReport cniper_at_minimax_radius(const SampleSize& n, const RadiusOptions& opt) {
  const RadiusResult rad = n.is_infinite() ? minimax_radius_fo(0.0, opt) : minimax_radius_so(0.0, n, opt);
  return cniper_report(rad.r_star, n);
}

bool saddlepoint_check(double r, const SampleSize& n, const std::vector<double>& c_grid) {
  const Reference ref = reference(r, n);
  const double x = cniper_so(r, n);
  const double best = max_risk(ref.b2, ref.v2, r, n);
  const double fo_best = r * r * ref.b2 + ref.v2;
  for (double c : c_grid) {
    if (!(c > 0.0)) return false;
    const HampelIC ic = make_hampel(c);
    const double v2 = ideal_variance(ic);
    if (c <= x) {
      if (max_risk(ic.b * ic.b, v2, r, n) < best - kSaddleTol) return false;
    } else {
      if (ic.A * x < x - kSaddleTol) return false;
      if (n.is_infinite()) {
        const double bias = r * ic.A * x;
        if (bias * bias + v2 < fo_best - kSaddleTol) return false;
      }
    }
  }
  return true;
}

}  // namespace robrisk
