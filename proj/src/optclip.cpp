#include "robrisk/optclip.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "robrisk/special.hpp"

namespace robrisk {

namespace {

constexpr double kLogRootLo = -32.0;  // log(1.3e-14)
constexpr double kLogRootHi = 3.6888794541139363;  // log(40)
constexpr double kC2Lo = 0.05;
constexpr double kC2Hi = 40.0;
constexpr double kTol = 1e-9;

void require_radius(double r, const char* who) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument(std::string(who) + ": r must be positive");
}

void require_n(long n, const char* who) {
  if (n < 1) throw std::invalid_argument(std::string(who) + ": n must be >= 1");
}

/// Root of h(c) = k c, solved in log c so that tiny roots keep relative accuracy.
double solve_scaled_root(double k) {
  const double u = find_root([k](double t) { return h_tail(std::exp(t)) - k * std::exp(t); },
                             {kLogRootLo, kLogRootHi, 1e-12});
  return std::exp(u);
}

}  // namespace

double solve_c0(double r) {
  require_radius(r, "solve_c0");
  const double r2 = r * r;
  return solve_scaled_root(r2);
}

double solve_c1(double r, long n) {
  require_radius(r, "solve_c1");
  require_n(n, "solve_c1");
  const double r2 = r * r;
  const double factor = 1.0 + (r2 + 1.0) / (r2 + r * std::sqrt(static_cast<double>(n)));
  return solve_scaled_root(r2 * factor);
}

double c1_closed_form(double r, long n) {
  require_n(n, "c1_closed_form");
  const double c0 = solve_c0(r);
  const double corr = (r * r * r + r) / (r * r - h_tail_deriv(c0));
  return c0 * (1.0 - corr / std::sqrt(static_cast<double>(n)));
}

double asmse_to(double c, double r, long n) {
  const HampelIC ic = make_hampel(c);
  const MomentCoeffs mc = moment_coeffs(ic);
  return risk_expansion(ic, mc, {r, SampleSize::finite(n), ic.breakdown()}).to;
}

double solve_c2(double r, long n) {
  require_radius(r, "solve_c2");
  require_n(n, "solve_c2");
  return minimize_scalar([r, n](double c) { return asmse_to(c, r, n); }, {kC2Lo, kC2Hi, kTol}).first;
}

ClipSolution clip_solution(double r, const SampleSize& n) {
  ClipSolution out;
  out.r = r;
  out.n = n;
  if (r == 0.0) {
    const double inf = std::numeric_limits<double>::infinity();
    out.c0 = out.c1 = out.c1_approx = out.c2 = inf;
    return out;
  }
  out.c0 = solve_c0(r);
  if (n.is_infinite()) {
    out.c1 = out.c1_approx = out.c2 = out.c0;
    return out;
  }
  out.c1 = solve_c1(r, n.value());
  out.c1_approx = c1_closed_form(r, n.value());
  out.c2 = solve_c2(r, n.value());
  return out;
}

}  // namespace robrisk
