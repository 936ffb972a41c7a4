#pragma once

// Asymptotic bias, variance and MSE-type risk of location M-estimators under a
// fixed-radius contamination eps placed at +infinity, together with the
// clipped tanh score family that is optimal for this risk.

#include <functional>
#include <vector>

#include "robrisk/influence.hpp"

namespace robrisk {

struct FyzContext {
  double eps = 0.0;  ///< fixed contamination radius, r / sqrt(n)
  long n = 1;

  /// Throws std::invalid_argument unless 0 <= eps < 1/2 and n >= 1.
  void validate() const;
};

/// psi(x) = a tanh(t y) + b (y - t tanh(t y)) with y = clamp(x, -c, c).
struct FyzScore {
  double a = 0.0;
  double b = 1.0;
  double c = 1.0;
  double t = 1.0;
};

/// A bounded, non-decreasing, odd location score with its a.e. derivative.
struct BoundedScore {
  std::function<double(double)> psi;
  std::function<double(double)> dpsi;
  double sup = 0.0;
  /// The score is smooth on each side of +-clip.
  double clip = 0.0;
};

BoundedScore hampel_score(const HampelIC& ic);
BoundedScore tanh_score(const FyzScore& s);

double eval_tanh_score(const FyzScore& s, double x);

/// d/dx of eval_tanh_score; 0 for |x| >= c.
double eval_tanh_score_deriv(const FyzScore& s, double x);

/// Root B of beta -> (1 - eps) E psi(X - beta) + eps * side * sup, X ~ N(0,1).
/// side = +1 puts the contamination at +inf, -1 at -inf.
/// Throws NumericError when no root exists in [-10, 10].
double fyz_bias(const BoundedScore& score, const FyzContext& ctx, int side = 1);

/// V1 / V2^2 with V1 = (1 - eps) E psi(X - B)^2 + eps sup^2 and
/// V2 = (1 - eps) E psi'(X - B). Throws NumericError if V2 <= 0.
double fyz_variance(const BoundedScore& score, const FyzContext& ctx, int side = 1);

/// B^2 + v^2 / n.
double fyz_risk(const BoundedScore& score, const FyzContext& ctx, int side = 1);

struct FyzOptimum {
  FyzScore score;        ///< normalized to a^2 + b^2 = 1
  double risk = 0.0;     ///< fyz_risk of the optimal tanh score
  double c_hampel = 0.0; ///< clipping height of the Hampel IC with the same sup-norm
  double hampel_risk = 0.0;
};

/// True if the tanh score is non-decreasing on [-c, c].
bool tanh_score_monotone(const FyzScore& s);

/// Hampel clipping height minimizing fyz_risk at (eps = r / sqrt n, n).
double fyz_optimal_hampel_c(double r, long n);

/// Coordinate descent over (angle of (a, b), t, c) starting from the best
/// Hampel score; the corresponding Hampel IC has the same sup |psi| after
/// standardizing the tanh score to E psi' = 1.
FyzOptimum fyz_optimize(double r, long n, int sweeps = 12);

}  // namespace robrisk
