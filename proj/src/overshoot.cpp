#include "robrisk/overshoot.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>

#include "robrisk/special.hpp"

namespace robrisk {

namespace {

void check_inputs(double r, double a) {
  if (!(r > 0.0)) throw std::invalid_argument("overshoot: r must be positive");
  if (!(a > 0.0)) throw std::invalid_argument("overshoot: a must be positive");
}

double bbar(const ScoreRange& range) { return 0.5 * (range.sup - range.inf); }

}  // namespace

double delta_prime(const ScoreRange& range, const MomentCoeffs& mc, double r, const SampleSize& n, double a) {
  check_inputs(r, a);
  const double v0 = mc.v0;
  const double bb = bbar(range);
  const double delta = 0.5 * r * (range.sup + range.inf);
  const double s1 = (-a + r * bb) / v0;
  const double inner = -r * delta / (2.0 * v0) - mc.l2 / (2.0 * v0) * (a * a + delta * delta) -
                       mc.v1t * v0 * s1 * delta - mc.rho0 / 6.0 * (s1 * s1 - 1.0) +
                       r * bb * delta * s1 / (v0 * v0) + r * r * delta / (2.0 * v0);
  return n.inv_sqrt() * inner;
}

double delta_prime(const HampelIC& ic, const MomentCoeffs& mc, double r, const SampleSize& n, double a) {
  return delta_prime(ScoreRange{ic.inf_psi(), ic.sup_psi()}, mc, r, n, a);
}

OvershootSpec overshoot_spec(const ScoreRange& range, const MomentCoeffs& mc, double r, const SampleSize& n,
                             double a) {
  OvershootSpec s;
  s.a = a;
  s.delta = 0.5 * r * (range.sup + range.inf);
  s.delta_prime = delta_prime(range, mc, r, n, a);
  s.s1 = (-a + r * bbar(range)) / mc.v0;
  s.alpha1p = a - s.delta - s.delta_prime;
  s.alpha2p = a + s.delta + s.delta_prime;
  return s;
}

OvershootRisk overshoot_risk(const ScoreRange& range, const MomentCoeffs& mc, double r, const SampleSize& n,
                             double a) {
  check_inputs(r, a);
  const double v0 = mc.v0;
  const double bb = bbar(range);
  const double delta = 0.5 * r * (range.sup + range.inf);
  const double s1 = (-a + r * bb) / v0;
  const double bracket = r * a / 2.0 + 2.0 * mc.l2 * a * delta - a * s1 * mc.v1t * v0 -
                         r * (range.inf * range.inf + range.sup * range.sup) * s1 / (4.0 * v0) + r * r * bb / 2.0;
  OvershootRisk out;
  out.leading = std_normal_cdf(s1);
  out.correction = n.inv_sqrt() / v0 * std_normal_pdf(s1) * bracket;
  out.value = out.leading + out.correction;
  return out;
}

OvershootRisk overshoot_risk(const HampelIC& ic, const MomentCoeffs& mc, double r, const SampleSize& n, double a) {
  return overshoot_risk(ScoreRange{ic.inf_psi(), ic.sup_psi()}, mc, r, n, a);
}

std::pair<double, double> overshoot_sides(const ScoreRange& range, const MomentCoeffs& mc, double r,
                                          const SampleSize& n, double a) {
  check_inputs(r, a);
  const OvershootSpec s = overshoot_spec(range, mc, r, n, a);
  const double v0 = mc.v0;
  const double v02 = v0 * v0;
  const double al1 = a - s.delta;
  const double al2 = a + s.delta;
  const double bc = range.inf;
  const double bh = range.sup;
  const double s1 = s.s1;
  const double phi = std_normal_pdf(s1);
  const double minus = r / (2.0 * v0) * al1 - mc.l2 / (2.0 * v0) * al1 * al1 + s1 * v0 * mc.v1t * al1 -
                       mc.rho0 / 6.0 * (s1 * s1 - 1.0) - r * bc * bc / (2.0 * v02) * s1 - r * r * bc / (2.0 * v0);
  const double plus = r / (2.0 * v0) * al2 + mc.l2 / (2.0 * v0) * al2 * al2 - s1 * v0 * mc.v1t * al2 +
                      mc.rho0 / 6.0 * (s1 * s1 - 1.0) - r * bh * bh / (2.0 * v02) * s1 + r * r * bh / (2.0 * v0);
  const double base = std_normal_cdf(s1);
  const double r_minus = base + phi * (n.inv_sqrt() * minus + s.delta_prime);
  const double r_plus = base + phi * (n.inv_sqrt() * plus - s.delta_prime);
  return {r_minus, r_plus};
}

namespace detail {

double overshoot_mixture_check(const HampelIC& ic, double r, long n, double a) {
  check_inputs(r, a);
  const double sn = std::sqrt(static_cast<double>(n));
  if (r >= sn) throw std::invalid_argument("overshoot_mixture_check: r must be < sqrt(n)");
  const double v0 = std::sqrt(ideal_variance(ic));
  const double b = ic.b;
  const boost::math::binomial_distribution<double> binom(static_cast<double>(n), r / sn);
  double total = 0.0;
  for (long k = 0; k <= n; ++k) {
    const double w = boost::math::pdf(binom, static_cast<double>(k));
    if (w < 1e-300) continue;
    const double kt = k / sn;
    const double sk = (-a + kt * b) / v0;
    total += w * (std_normal_cdf(sk) + std_normal_pdf(sk) / (2.0 * sn * v0) * (a * kt + kt * kt * b));
  }
  return total;
}

}  // namespace detail

}  // namespace robrisk
