#include "robrisk/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace robrisk {

SampleSize SampleSize::finite(long n) {
  if (n < 1) throw std::invalid_argument("SampleSize: n must be >= 1");
  return SampleSize(n);
}

long SampleSize::value() const {
  if (!n_) throw std::logic_error("SampleSize: infinite sample size has no integer value");
  return *n_;
}

double SampleSize::inv_sqrt() const { return n_ ? 1.0 / std::sqrt(static_cast<double>(*n_)) : 0.0; }

double SampleSize::inv() const { return n_ ? 1.0 / static_cast<double>(*n_) : 0.0; }

double SampleSize::sqrt() const {
  return n_ ? std::sqrt(static_cast<double>(*n_)) : std::numeric_limits<double>::infinity();
}

std::string SampleSize::to_string() const { return n_ ? std::to_string(*n_) : std::string("inf"); }

void NeighborhoodSpec::validate() const {
  if (!(r >= 0.0)) throw std::invalid_argument("NeighborhoodSpec: r must be >= 0");
  if (!(eps0 > 0.0 && eps0 <= 0.5)) throw std::invalid_argument("NeighborhoodSpec: eps0 must lie in (0, 1/2]");
}

double NeighborhoodSpec::effective_radius() const { return std::min(r, n.sqrt()); }

std::string to_string(ContaminationSide side) {
  switch (side) {
    case ContaminationSide::left:
      return "left";
    case ContaminationSide::right:
      return "right";
    case ContaminationSide::tie:
      return "tie";
  }
  return "tie";
}

double ScoreRange::b() const { return std::max(-inf, sup); }

double asmse_fo(const HampelIC& ic, const MomentCoeffs& mc, double r) {
  return r * r * ic.b * ic.b + mc.v0 * mc.v0;
}

double asmse_fo(const HampelIC& ic, double r) { return r * r * ic.b * ic.b + ideal_variance(ic); }

double a1_term(const HampelIC& ic, const MomentCoeffs& mc, double r) {
  const double b2 = ic.b * ic.b;
  return mc.v0 * mc.v0 + b2 * (1.0 + 2.0 * r * r);
}

double a1_term(const HampelIC& ic, double r) {
  const double b2 = ic.b * ic.b;
  return ideal_variance(ic) + b2 * (1.0 + 2.0 * r * r);
}

double a2_term(const HampelIC& ic, const MomentCoeffs& mc, double r) {
  const double b = ic.b;
  const double b2 = b * b;
  const double v0 = mc.v0;
  const double v02 = v0 * v0;
  const double r2 = r * r;
  const double ideal = 2.0 / 3.0 * v02 * v0 * mc.rho1 + v02 * v02 * (3.0 * mc.v2t + mc.l3);
  const double quad = v02 * ((3.0 * mc.v2t + 2.0 * mc.l3) * b2 + 1.0) + 5.0 * b2;
  const double quart = mc.l3 / 3.0 * b2 * b2 + 3.0 * b2;
  return ideal + quad * r2 + quart * r2 * r2;
}

double a1_general(const MomentCoeffs& mc, double b, double r, int sign) {
  const double s = sign < 0 ? -1.0 : 1.0;
  const double v02 = mc.v0 * mc.v0;
  const double b2 = b * b;
  return v02 * (s * (4.0 * mc.v1t + 3.0 * mc.l2) * b + 1.0) + b2 + (2.0 * b2 + s * mc.l2 * b2 * b) * r * r;
}

double a2_general(const MomentCoeffs& mc, double b, double r, int sign) {
  const double s = sign < 0 ? -1.0 : 1.0;
  const double v0 = mc.v0;
  const double v02 = v0 * v0;
  const double b2 = b * b;
  const double b3 = b2 * b;
  const double r2 = r * r;
  const double l2 = mc.l2;
  const double v1 = mc.v1t;
  const double v2 = mc.v2t;
  const double ideal = v02 * v0 * ((l2 + 2.0 * v1) * mc.rho0 + 2.0 / 3.0 * mc.rho1) +
                       v02 * v02 * (3.0 * v2 + 15.0 / 4.0 * l2 * l2 + mc.l3 + 9.0 * v1 * v1 + 12.0 * v1 * l2);
  const double quad =
      v02 * ((3.0 * v2 + 3.0 * v1 * v1 + 15.0 / 2.0 * l2 * l2 + 2.0 * mc.l3 + 12.0 * v1 * l2) * b2 + 1.0 +
             s * (8.0 * v1 + 6.0 * l2) * b) +
      s * 3.0 * l2 * b3 + 5.0 * b2;
  const double quart = (5.0 / 4.0 * l2 * l2 + mc.l3 / 3.0) * b2 * b2 + s * 3.0 * l2 * b3 + 3.0 * b2;
  return ideal + quad * r2 + quart * r2 * r2;
}

RiskExpansion risk_expansion(const HampelIC& ic, const MomentCoeffs& mc, const NeighborhoodSpec& nb) {
  nb.validate();
  const double r = nb.effective_radius();
  RiskExpansion out;
  out.fo = asmse_fo(ic, mc, r);
  out.A1 = a1_term(ic, mc, r);
  out.A2 = a2_term(ic, mc, r);
  out.so = out.fo + r * nb.n.inv_sqrt() * out.A1;
  out.to = out.so + out.A2 * nb.n.inv();
  out.side = contamination_side(ic, mc, nb);
  return out;
}

double asmse_so(const HampelIC& ic, double r, const SampleSize& n) {
  const double re = std::min(r, n.sqrt());
  return asmse_fo(ic, re) + re * n.inv_sqrt() * a1_term(ic, re);
}

ContaminationSide contamination_side(const ScoreRange& range, const MomentCoeffs& mc,
                                     const NeighborhoodSpec& nb) {
  if (range.sup < -range.inf) return ContaminationSide::left;
  if (range.sup > -range.inf) return ContaminationSide::right;
  const double r = nb.effective_radius();
  const double b = range.b();
  const double q = b * b / (mc.v0 * mc.v0);
  const double rn = r * nb.n.inv_sqrt();
  const double threshold =
      -mc.l2 / 4.0 * (q * (r * r + 3.0) * (1.0 + rn - 2.0 * rn * rn) + 3.0 * (1.0 - q));
  if (mc.v1t > threshold) return ContaminationSide::left;
  if (mc.v1t < threshold) return ContaminationSide::right;
  return ContaminationSide::tie;
}

ContaminationSide contamination_side(const HampelIC& ic, const MomentCoeffs& mc, const NeighborhoodSpec& nb) {
  return contamination_side(ScoreRange{ic.inf_psi(), ic.sup_psi()}, mc, nb);
}

double symmetric_risk_direct(const HampelIC& ic, const MomentCoeffs& mc, double r, const SampleSize& n) {
  const double b2 = ic.b * ic.b;
  const double v0 = mc.v0;
  const double v02 = v0 * v0;
  const double r2 = r * r;
  const double rs = r * n.inv_sqrt();
  const double inv_n = n.inv();
  return (r2 * b2 + v02) * (1.0 + rs + r2 * inv_n) + rs * b2 * (1.0 + r2) + r2 * inv_n * b2 * (5.0 + 2.0 * r2) +
         (2.0 / 3.0 * v02 * v0 * mc.rho1 + v02 * v02 * (3.0 * mc.v2t + mc.l3)) * inv_n +
         (v02 * (3.0 * mc.v2t + 2.0 * mc.l3) * b2 * r2 + mc.l3 / 3.0 * b2 * b2 * r2 * r2) * inv_n;
}

double ideal_model_risk(const MomentCoeffs& mc, const SampleSize& n) {
  const double v0 = mc.v0;
  const double v02 = v0 * v0;
  const double l2 = mc.l2;
  const double v1 = mc.v1t;
  const double skew = v02 * v0 * ((l2 + 2.0 * v1) * mc.rho0 + 2.0 / 3.0 * mc.rho1);
  const double rest = v02 * v02 * (3.0 * mc.v2t + mc.l3 + 15.0 / 4.0 * l2 * l2 + 12.0 * v1 * l2 + 9.0 * v1 * v1);
  return v02 + (skew + rest) * n.inv();
}

}  // namespace robrisk
