#pragma once

// Maximal-MSE expansion of a location M-estimator on thinned-out shrinking
// contamination neighborhoods:
//
//   R_n = r^2 b^2 + v0^2 + (r / sqrt(n)) A1 + A2 / n + o(1/n).

#include <optional>
#include <string>

#include "robrisk/influence.hpp"

namespace robrisk {

/// Sample size that is either a positive integer or infinite.
class SampleSize {
 public:
  static SampleSize infinite() { return SampleSize(); }
  static SampleSize finite(long n);

  bool is_infinite() const { return !n_.has_value(); }
  /// Throws std::logic_error for the infinite size.
  long value() const;
  /// 1/sqrt(n), zero when infinite.
  double inv_sqrt() const;
  /// 1/n, zero when infinite.
  double inv() const;
  /// sqrt(n), +inf when infinite.
  double sqrt() const;
  std::string to_string() const;

  friend bool operator==(const SampleSize&, const SampleSize&) = default;

 private:
  SampleSize() = default;
  explicit SampleSize(long n) : n_(n) {}
  std::optional<long> n_;
};

struct NeighborhoodSpec {
  double r = 0.0;
  SampleSize n = SampleSize::infinite();
  double eps0 = 0.5;

  void validate() const;
  /// min(r, sqrt(n)).
  double effective_radius() const;
};

enum class ContaminationSide { left, right, tie };

std::string to_string(ContaminationSide side);

struct RiskExpansion {
  double fo = 0.0;
  double A1 = 0.0;
  double A2 = 0.0;
  double so = 0.0;
  double to = 0.0;
  ContaminationSide side = ContaminationSide::tie;
};

/// inf and sup of a bounded monotone score; b = max(-inf, sup).
struct ScoreRange {
  double inf = -1.0;
  double sup = 1.0;
  double b() const;
};

double asmse_fo(const HampelIC& ic, const MomentCoeffs& mc, double r);
/// Same value using the closed-form ideal variance instead of MomentCoeffs.
double asmse_fo(const HampelIC& ic, double r);

/// Symmetric-case A1 = v0^2 + b^2 (1 + 2 r^2).
double a1_term(const HampelIC& ic, const MomentCoeffs& mc, double r);
double a1_term(const HampelIC& ic, double r);

/// Symmetric-case A2 (l2 = v1t = rho0 = 0).
double a2_term(const HampelIC& ic, const MomentCoeffs& mc, double r);

/// General A1 / A2 polynomials; sign = -1 when left contamination is
/// risk-maximizing, +1 for right.
double a1_general(const MomentCoeffs& mc, double b, double r, int sign);
double a2_general(const MomentCoeffs& mc, double b, double r, int sign);

RiskExpansion risk_expansion(const HampelIC& ic, const MomentCoeffs& mc, const NeighborhoodSpec& nb);

/// s-o maximal MSE r^2 b^2 + v0^2 + (r/sqrt(n)) A1 using closed-form moments.
double asmse_so(const HampelIC& ic, double r, const SampleSize& n);

/// Which contamination (left / right Dirac-type) attains the maximal risk.
ContaminationSide contamination_side(const ScoreRange& range, const MomentCoeffs& mc,
                                     const NeighborhoodSpec& nb);
ContaminationSide contamination_side(const HampelIC& ic, const MomentCoeffs& mc, const NeighborhoodSpec& nb);

/// Symmetric maximal risk assembled term by term in its factored form
///   (r^2 b^2 + v0^2)(1 + r/sqrt n + r^2/n) + (r/sqrt n) b^2 (1 + r^2) + ...
/// Independent of the A1/A2 bookkeeping; used as a cross-check.
double symmetric_risk_direct(const HampelIC& ic, const MomentCoeffs& mc, double r, const SampleSize& n);

/// Ideal-model (r = 0) expansion of n E S_n^2 including asymmetric terms.
double ideal_model_risk(const MomentCoeffs& mc, const SampleSize& n);

}  // namespace robrisk
