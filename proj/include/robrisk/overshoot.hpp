#pragma once

// Second-order over-/undershooting risk of an M-estimator S_n for the interval
// [-alpha1'/sqrt(n), alpha2'/sqrt(n)] of total length 2a/sqrt(n).

#include <utility>

#include "robrisk/expansion.hpp"
#include "robrisk/influence.hpp"

namespace robrisk {

struct OvershootSpec {
  double a = 1.0;
  double delta = 0.0;        ///< (r/2)(sup psi + inf psi)
  double delta_prime = 0.0;  ///< O(1/sqrt(n)) shift of the partition
  double s1 = 0.0;           ///< (-a + r bbar)/v0
  double alpha1p = 1.0;
  double alpha2p = 1.0;
};

struct OvershootRisk {
  double value = 0.0;       ///< leading + correction
  double leading = 0.0;     ///< Phi(s1)
  double correction = 0.0;  ///< 1/sqrt(n) term
};

/// Partition (alpha1', alpha2') and s1 for a score with range `range`.
OvershootSpec overshoot_spec(const ScoreRange& range, const MomentCoeffs& mc, double r, const SampleSize& n,
                             double a);

double delta_prime(const ScoreRange& range, const MomentCoeffs& mc, double r, const SampleSize& n, double a);
double delta_prime(const HampelIC& ic, const MomentCoeffs& mc, double r, const SampleSize& n, double a);

OvershootRisk overshoot_risk(const ScoreRange& range, const MomentCoeffs& mc, double r, const SampleSize& n,
                             double a);
OvershootRisk overshoot_risk(const HampelIC& ic, const MomentCoeffs& mc, double r, const SampleSize& n, double a);

/// Undershoot risk R- and overshoot risk R+ evaluated separately on the
/// partition (alpha1', alpha2').
std::pair<double, double> overshoot_sides(const ScoreRange& range, const MomentCoeffs& mc, double r,
                                          const SampleSize& n, double a);

namespace detail {

/// Undershoot risk obtained by averaging the conditional normal approximation
/// over the binomial number of contaminated observations. Agrees with
/// overshoot_risk up to o(1/sqrt(n)) for symmetric Hampel scores.
double overshoot_mixture_check(const HampelIC& ic, double r, long n, double a);

}  // namespace detail

}  // namespace robrisk
