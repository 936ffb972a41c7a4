#include "robrisk/influence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "robrisk/special.hpp"

namespace robrisk {

namespace {

constexpr double kStep = 1e-2;

const QuadratureSpec kMomentQuadrature{1e-14, 1e-13, 4096};

struct ShiftedMoments {
  double mean;
  double sd;
  double skew;
  double exkurt;
};

// Raw moments E[clamp(X - t, -c, c)^k], k = 1..4: quadrature over the linear
// zone plus the two atoms at +-c.
ShiftedMoments shifted_moments(const HampelIC& ic, double t) {
  const double c = ic.c;
  std::array<double, 5> raw{};
  const double upper_mass = std_normal_sf(c + t);
  const double lower_mass = std_normal_cdf(t - c);
  for (int k = 1; k <= 4; ++k) {
    double inner = 0.0;
    if (std::isfinite(c)) {
      inner = integrate([k, t](double y) { return std::pow(y, k) * std_normal_pdf(y + t); }, -c, c,
                        kMomentQuadrature);
      raw[k] = inner + std::pow(c, k) * upper_mass + std::pow(-c, k) * lower_mass;
    } else {
      const double lo = -t - 12.0;
      const double hi = -t + 12.0;
      raw[k] = integrate([k, t](double y) { return std::pow(y, k) * std_normal_pdf(y + t); }, lo, hi,
                         kMomentQuadrature);
    }
  }
  const double a = ic.A;
  const double m1 = raw[1];
  const double var = raw[2] - m1 * m1;
  const double c3 = raw[3] - 3.0 * m1 * raw[2] + 2.0 * m1 * m1 * m1;
  const double c4 = raw[4] - 4.0 * m1 * raw[3] + 6.0 * m1 * m1 * raw[2] - 3.0 * m1 * m1 * m1 * m1;
  return {a * m1, a * std::sqrt(var), c3 / std::pow(var, 1.5), c4 / (var * var) - 3.0};
}

// 7-point central stencils on samples f(-3h..3h).
double d1(const std::array<double, 7>& f, double h) {
  return (-f[0] + 9.0 * f[1] - 45.0 * f[2] + 45.0 * f[4] - 9.0 * f[5] + f[6]) / (60.0 * h);
}
double d2(const std::array<double, 7>& f, double h) {
  return (2.0 * f[0] - 27.0 * f[1] + 270.0 * f[2] - 490.0 * f[3] + 270.0 * f[4] - 27.0 * f[5] +
          2.0 * f[6]) /
         (180.0 * h * h);
}
double d3(const std::array<double, 7>& f, double h) {
  return (f[0] - 8.0 * f[1] + 13.0 * f[2] - 13.0 * f[4] + 8.0 * f[5] - f[6]) / (8.0 * h * h * h);
}

// One Richardson step combining step h (coarse) and h/2 (fine) for a stencil of order p.
double richardson(double coarse, double fine, int order) {
  const double w = std::ldexp(1.0, order);
  return (w * fine - coarse) / (w - 1.0);
}

}  // namespace

HampelIC make_hampel(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("make_hampel: clipping height must be positive");
  HampelIC ic;
  ic.c = c;
  ic.A = std::isfinite(c) ? 1.0 / std::erf(c / kSqrt2) : 1.0;
  ic.b = ic.A * c;
  ic.z = 0.0;
  return ic;
}

double eval_ic(const HampelIC& ic, double x) { return ic.A * std::clamp(x - ic.z, -ic.c, ic.c); }

double h_tail(double c) {
  if (c < 0.0) throw std::invalid_argument("h_tail: c must be non-negative");
  if (!std::isfinite(c)) return 0.0;
  return 2.0 * (std_normal_pdf(c) - c * std_normal_sf(c));
}

double h_tail_deriv(double c) {
  if (c < 0.0) throw std::invalid_argument("h_tail_deriv: c must be non-negative");
  return -2.0 * std_normal_sf(c);
}

double ideal_variance(const HampelIC& ic) {
  const double c = ic.c;
  if (!std::isfinite(c)) return 1.0;
  const double inner = std::erf(c / kSqrt2) - 2.0 * c * std_normal_pdf(c);
  return ic.A * ic.A * (inner + 2.0 * c * c * std_normal_sf(c));
}

MomentCoeffs raw_moment_coeffs(const HampelIC& ic) {
  // Samples at t = k h/2, k = -6..6; the coarse stencil uses the even k.
  std::array<ShiftedMoments, 13> s{};
  for (int k = -6; k <= 6; ++k) s[k + 6] = shifted_moments(ic, 0.5 * kStep * k);

  auto take = [&s](auto member, int stride) {
    std::array<double, 7> f{};
    for (int j = -3; j <= 3; ++j) f[j + 3] = s[6 + stride * j].*member;
    return f;
  };
  const double coarse = kStep;
  const double fine = 0.5 * kStep;

  const auto lc = take(&ShiftedMoments::mean, 2);
  const auto lf = take(&ShiftedMoments::mean, 1);
  const auto vc = take(&ShiftedMoments::sd, 2);
  const auto vf = take(&ShiftedMoments::sd, 1);
  const auto rc = take(&ShiftedMoments::skew, 2);
  const auto rf = take(&ShiftedMoments::skew, 1);

  MomentCoeffs mc;
  mc.l1 = richardson(d1(lc, coarse), d1(lf, fine), 6);
  mc.l2 = richardson(d2(lc, coarse), d2(lf, fine), 6);
  mc.l3 = richardson(d3(lc, coarse), d3(lf, fine), 4);
  mc.v0 = s[6].sd;
  mc.v1t = richardson(d1(vc, coarse), d1(vf, fine), 6) / mc.v0;
  mc.v2t = richardson(d2(vc, coarse), d2(vf, fine), 6) / mc.v0;
  mc.rho0 = s[6].skew;
  mc.rho1 = richardson(d1(rc, coarse), d1(rf, fine), 6);
  mc.kappa0 = s[6].exkurt;
  return mc;
}

MomentCoeffs moment_coeffs(const HampelIC& ic) {
  MomentCoeffs mc = raw_moment_coeffs(ic);
  mc.l2 = 0.0;
  mc.v1t = 0.0;
  mc.rho0 = 0.0;
  return mc;
}

}  // namespace robrisk
