#pragma once

// Numeric substrate: standard-normal special functions, adaptive quadrature,
// bracketed root finding and scalar minimization.

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace robrisk {

/// Raised when an iterative numeric routine fails to meet its contract
/// (quadrature non-convergence, persistent simulation breakdown, ...).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

using RealFunction = std::function<double(double)>;

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 200;

  void validate() const;
};

struct BracketSpec {
  double lo = 0.0;
  double hi = 1.0;
  double tol = 1e-9;

  void validate() const;
};

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
inline constexpr double kSqrt2 = 1.41421356237309504880168872421;

/// phi(x) = exp(-x^2/2)/sqrt(2 pi)
double std_normal_pdf(double x);

/// Phi(x), computed through erfc so that both tails keep full relative accuracy.
double std_normal_cdf(double x);

/// 1 - Phi(x) without cancellation for large x.
double std_normal_sf(double x);

/// Phi^{-1}(p); throws std::domain_error unless 0 < p < 1.
double std_normal_quantile(double p);

/// Adaptive Gauss-Kronrod quadrature of f over [lo, hi]. Either limit may be
/// infinite. Throws NumericError when the error estimate exceeds
/// max(abs_tol, rel_tol * integral of |f|) at the subdivision limit.
double integrate(const RealFunction& f, double lo, double hi, const QuadratureSpec& spec = {});

/// Root of f inside the bracket; f(lo) and f(hi) must differ in sign.
/// Returns a point within bracket.tol of the root.
double find_root(const RealFunction& f, const BracketSpec& bracket);

/// Minimizer of f on [lo, hi] and the value there. f must be unimodal on the
/// bracket; otherwise a local minimum is returned.
std::pair<double, double> minimize_scalar(const RealFunction& f, const BracketSpec& bracket);

}  // namespace robrisk
