#pragma once

// Order-wise optimal clipping heights of the Hampel IC.

#include "robrisk/expansion.hpp"

namespace robrisk {

struct ClipSolution {
  double c0 = 0.0;         ///< first-order optimal
  double c1 = 0.0;         ///< second-order optimal (exact root)
  double c1_approx = 0.0;  ///< first-order-in-1/sqrt(n) approximation of c1
  double c2 = 0.0;         ///< minimizer of the third-order risk
  double r = 0.0;
  SampleSize n = SampleSize::infinite();
};

/// Root of h(c) = r^2 c. Throws std::invalid_argument for r <= 0.
double solve_c0(double r);

/// Root of r^2 c (1 + (r^2 + 1)/(r^2 + r sqrt(n))) = h(c).
double solve_c1(double r, long n);

/// c0 (1 - (r^3 + r) / (sqrt(n) (r^2 - h'(c0)))).
double c1_closed_form(double r, long n);

/// argmin over c in [0.05, 40] of the third-order maximal risk.
double solve_c2(double r, long n);

/// All clipping heights at (r, n). For n = inf, c1 = c1_approx = c2 = c0.
/// r = 0 yields the classical (unclipped) solution with every height = +inf.
ClipSolution clip_solution(double r, const SampleSize& n);

/// Third-order maximal risk of the Hampel IC with clipping c at (r, n).
double asmse_to(double c, double r, long n);

}  // namespace robrisk
