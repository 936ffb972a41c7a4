#pragma once

// Minimax radii: the radius whose optimal Hampel IC has the smallest maximal
// inefficiency over a range of true radii.

#include <string>

#include "robrisk/exec.hpp"
#include "robrisk/expansion.hpp"

namespace robrisk {

enum class RiskOrder { first, second };

std::string to_string(RiskOrder order);

struct RadiusResult {
  double gamma = 0.0;  ///< restriction factor; +inf when unrestricted
  double r_star = 0.0;
  double c_star = 0.0;
  double r_inner = 0.0;  ///< minimax radius within the least favourable window (= r_star if unrestricted)
  double ineff = 0.0;  ///< minimax inefficiency minus one, as a fraction
  RiskOrder order = RiskOrder::first;
  SampleSize n = SampleSize::infinite();
};

struct RadiusOptions {
  double r_lo = 1e-4;
  /// Upper end of the true-radius range; <= 0 selects 1e4 (first order) or
  /// just below sqrt(n) (second order).
  double r_hi = 0.0;
  int sup_points = 400;
  Exec exec = Exec::parallel;
};

/// asMSE0(c0(r'), r) / asMSE0(c0(r), r).
double ineff_fo(double r_prime, double r);

/// R1(c1(r', n), r, n) / R1(c1(r, n), r, n) with R1 the second-order maximal risk.
/// Requires r, r' < sqrt(n); n = inf reduces to ineff_fo.
double ineff_so(double r_prime, double r, const SampleSize& n);

/// sup over r in [lo, hi] of the inefficiency of clipping tuned to r_prime.
/// Returns (argsup r, sup value).
std::pair<double, double> max_ineff(RiskOrder order, double r_prime, double lo, double hi, const SampleSize& n,
                                    int points = 400, Exec exec = Exec::parallel);

/// Minimax radius r' and inefficiency for true radii restricted to [r/gamma, r gamma].
std::pair<double, double> window_minimax(RiskOrder order, double r, double gamma, const SampleSize& n,
                                         const RadiusOptions& opt = {});

/// gamma = +inf (or 0) gives the unrestricted minimax radius over [r_lo, r_hi];
/// finite gamma > 1 restricts the true radius to [r/gamma, r gamma] and returns
/// the least favourable such r.
RadiusResult minimax_radius_fo(double gamma, const RadiusOptions& opt = {});
RadiusResult minimax_radius_so(double gamma, const SampleSize& n, const RadiusOptions& opt = {});

}  // namespace robrisk
