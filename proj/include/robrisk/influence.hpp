#pragma once

// Hampel-type influence curves for the standard-normal location model and the
// Taylor coefficients of the shifted moment functions
//   L(t) = E psi(X - t),  V(t) = sd psi(X - t),  rho(t) = skewness,  kappa(t) = excess kurtosis.

namespace robrisk {

/// Clipped-linear influence curve psi(x) = A * clamp(x - z, -c, c).
struct HampelIC {
  double c = 1.0;  ///< clipping height in Lambda-units
  double A = 1.0;  ///< standardizing constant, 1 / (2 Phi(c) - 1)
  double b = 1.0;  ///< sup |psi| = A c
  double z = 0.0;  ///< centering, 0 for symmetric F

  double inf_psi() const { return -b; }
  double sup_psi() const { return b; }
  /// (sup - inf) / 2
  double half_range() const { return b; }
  /// |inf + sup| / min(-inf, sup); zero for the symmetric IC.
  double delta0() const { return 0.0; }
  /// Finite-sample breakdown bound 1 / (2 + delta0).
  double breakdown() const { return 0.5; }
};

/// Coefficients of the expansions
///   L(t) = l1 t + l2 t^2/2 + l3 t^3/6,  V(t) = v0 (1 + v1t t + v2t t^2/2),
///   rho(t) = rho0 + rho1 t,  kappa(t) = kappa0.
/// The convention is psi_t(x) = psi(x - t), so l1 = -1 for an IC.
struct MomentCoeffs {
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;
  double v0 = 1.0;
  double v1t = 0.0;
  double v2t = 0.0;
  double rho0 = 0.0;
  double rho1 = 0.0;
  double kappa0 = 0.0;
};

/// Throws std::invalid_argument unless c > 0 (c may be +inf for the identity score).
HampelIC make_hampel(double c);

double eval_ic(const HampelIC& ic, double x);

/// h(c) = E(|X| - c)_+ = 2 (phi(c) - c (1 - Phi(c))) for X ~ N(0,1).
double h_tail(double c);

/// h'(c) = -2 (1 - Phi(c)).
double h_tail_deriv(double c);

/// E psi^2 under N(0,1) in closed form.
double ideal_variance(const HampelIC& ic);

/// Moment coefficients with l2 = v1t = rho0 = 0 imposed (they vanish by skew symmetry).
MomentCoeffs moment_coeffs(const HampelIC& ic);

/// Same computation without imposing the symmetry zeros; used to check that the
/// numerically obtained l2, v1t, rho0 are negligible.
MomentCoeffs raw_moment_coeffs(const HampelIC& ic);

}  // namespace robrisk
