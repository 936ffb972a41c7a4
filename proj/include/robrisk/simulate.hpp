#pragma once

// Monte-Carlo evaluation of Hampel M-estimators under the thinned-out
// convex contamination model: K ~ Bin(n, r/sqrt(n)) observations are replaced
// by a Dirac point, the rest are standard normal.

#include <cstdint>
#include <utility>
#include <vector>

#include "robrisk/exec.hpp"
#include "robrisk/influence.hpp"

namespace robrisk {

struct SimConfig {
  double c = 1.0;
  double r = 0.0;
  long n = 30;
  long reps = 1000000;
  std::uint64_t seed = 1;
  double dirac = 1e6;
  bool condition_breakdown = true;

  /// Throws std::invalid_argument on reps < 1, n < 1, r outside [0, sqrt(n)),
  /// c <= 0 or |dirac| <= c + 1.
  void validate() const;
};

struct SimResult {
  double mse = 0.0;  ///< n * mean(S_n^2)
  double mse_stderr = 0.0;
  double overshoot = 0.0;  ///< frequency of S_n >= a / sqrt(n)
  double overshoot_stderr = 0.0;
  double undershoot = 0.0;  ///< frequency of S_n <= -a / sqrt(n)
  double undershoot_stderr = 0.0;
  long reps_used = 0;
  long reps_rejected = 0;  ///< replications dropped by the breakdown condition
};

/// Root of t -> sum psi(x_i - t). On a flat zero stretch the midpoint is returned.
/// Throws NumericError if the sample is empty.
double m_estimate(const std::vector<double>& sample, const HampelIC& ic);

/// Splittable 64-bit generator; replication i of a run with seed s draws from
/// the stream seeded with stream_seed(s, i).
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

 private:
  std::uint64_t state_;
};

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Empirical maximal MSE; over-/undershoot frequencies are reported at a = 1.
SimResult run_mse(const SimConfig& cfg, Exec exec = Exec::parallel);

/// Empirical over-/undershoot frequencies at the symmetric partition a.
SimResult run_overshoot(const SimConfig& cfg, double a, Exec exec = Exec::parallel);

/// Results for several clipping heights on common random numbers (cfg.c ignored).
std::vector<SimResult> run_mse_grid(const SimConfig& cfg, const std::vector<double>& c_values, double a = 1.0,
                                    Exec exec = Exec::parallel);

/// (c_ex, mse at c_ex): grid search over 21 points spanning [0.3 c0, 1.2 c0]
/// on common random numbers, then a parabola through the best three points.
std::pair<double, double> optimize_c_exact(double r, long n, long reps, std::uint64_t seed,
                                           Exec exec = Exec::parallel);

}  // namespace robrisk
