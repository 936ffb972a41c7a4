#pragma once

// Relative risk of a Hampel IC with clipping c with respect to the first-order
// optimal one, and the envelope of the second-order correction to it.

#include <utility>
#include <vector>

#include "robrisk/exec.hpp"
#include "robrisk/expansion.hpp"

namespace robrisk {

struct RelRiskReport {
  double rel0 = 1.0;        ///< asMSE0(c) / asMSE0(c0)
  double rel1 = 1.0;        ///< s-o ratio, see rel_mse1
  double delta_c = 0.0;     ///< Delta(c)
  double rho = 0.0;         ///< relative clipping range
  double envelope_r = 0.0;  ///< envelope at this r
  double envelope = 0.0;    ///< maximum of the envelope over the default r grid
};

struct EnvelopeResult {
  double max = 0.0;
  double argmax_r = 0.0;
  std::vector<std::pair<double, double>> series;  ///< (r, envelope at r)
};

/// (asMSE0(c) + r/sqrt(n) A1(c)) / (asMSE0(c0) + r/sqrt(n) A1(c0)), c0 = c0(r).
double rel_mse1(double c, double r, const SampleSize& n);

/// asMSE0(c) / asMSE0(c0(r)).
double rel_mse0(double c, double r);

/// Percentage deviation (max(x, 1/x) - 1) * 100 of a risk ratio x.
double ratio_deviation_pct(double ratio);

/// Delta(c) = (b^2 - v0^2) / asMSE0(c) at radius r.
double delta_c(double c, double r);

/// max over c in [c0/(1+rho), c0 (1+rho)] of r (Delta(c) - Delta(c0)).
double envelope_at(double rho, double r, int c_points = 200);

/// Envelope series over r_grid and its maximum.
EnvelopeResult envelope(double rho, const std::vector<double>& r_grid, int c_points = 200,
                        Exec exec = Exec::parallel);

/// r = 0.01, 0.02, ..., 3.00.
std::vector<double> default_envelope_grid();

RelRiskReport rel_risk_report(double c, double r, const SampleSize& n, double rho);

}  // namespace robrisk
