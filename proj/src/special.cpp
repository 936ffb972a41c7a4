#include "robrisk/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

namespace robrisk {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
  }
  if (max_subdivisions < 10) {
    throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 10");
  }
}

void BracketSpec::validate() const {
  if (!(lo < hi)) throw std::invalid_argument("BracketSpec: need lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("BracketSpec: tol must be positive");
}

double std_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double std_normal_sf(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("std_normal_quantile: p must lie in (0, 1)");
  }
  double x = -kSqrt2 * boost::math::erfc_inv(2.0 * p);
  // One Newton polish on the cdf residual; erfc_inv is already close to eps.
  const double dens = std_normal_pdf(x);
  if (dens > 0.0) x -= (std_normal_cdf(x) - p) / dens;
  return x;
}

double integrate(const RealFunction& f, double lo, double hi, const QuadratureSpec& spec) {
  spec.validate();
  if (lo == hi) return 0.0;
  if (lo > hi) return -integrate(f, hi, lo, spec);
  const auto depth = static_cast<unsigned>(std::ceil(std::log2(static_cast<double>(spec.max_subdivisions))));
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, lo, hi, depth, spec.rel_tol, &error, &l1);
  if (!std::isfinite(value) || error > std::max(spec.abs_tol, spec.rel_tol * l1)) {
    throw NumericError("integrate: no convergence within max_subdivisions (error estimate " +
                       std::to_string(error) + ")");
  }
  return value;
}

double find_root(const RealFunction& f, const BracketSpec& bracket) {
  bracket.validate();
  const double flo = f(bracket.lo);
  const double fhi = f(bracket.hi);
  if (flo == 0.0) return bracket.lo;
  if (fhi == 0.0) return bracket.hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw std::invalid_argument("find_root: no sign change in bracket");
  }
  const double tol = bracket.tol;
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, bracket.lo, bracket.hi, flo, fhi,
      [tol](double x0, double x1) { return std::abs(x1 - x0) <= tol; }, max_iter);
  if (std::abs(b - a) > tol) throw NumericError("find_root: iteration limit reached");
  return 0.5 * (a + b);
}

std::pair<double, double> minimize_scalar(const RealFunction& f, const BracketSpec& bracket) {
  bracket.validate();
  if (bracket.hi - bracket.lo < bracket.tol) {
    throw std::invalid_argument("minimize_scalar: degenerate bracket");
  }
  // Brent cannot resolve a smooth minimizer below sqrt(eps) relative.
  constexpr int kMaxBits = std::numeric_limits<double>::digits / 2;
  const int bits = std::clamp(static_cast<int>(std::ceil(-std::log2(bracket.tol))) + 1, 8, kMaxBits);
  std::uintmax_t max_iter = 500;
  const auto [x, fx] = boost::math::tools::brent_find_minima(f, bracket.lo, bracket.hi, bits, max_iter);
  return {x, fx};
}

}  // namespace robrisk
