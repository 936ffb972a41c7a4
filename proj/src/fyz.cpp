#include "robrisk/fyz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "robrisk/special.hpp"

namespace robrisk {

namespace {

constexpr double kBiasLo = -10.0;
constexpr double kBiasHi = 10.0;
constexpr double kPenalty = 1e6;

/// E f(X - beta) for X ~ N(0,1), split at the clipping kinks of the score.
double normal_expect(const std::function<double(double)>& f, double beta, double clip) {
  const auto g = [&](double x) { return f(x - beta) * std_normal_pdf(x); };
  const double inf = std::numeric_limits<double>::infinity();
  QuadratureSpec q;
  q.abs_tol = 1e-13;
  q.rel_tol = 1e-12;
  if (!(clip > 0.0) || std::isinf(clip)) return integrate(g, -inf, inf, q);
  return integrate(g, -inf, beta - clip, q) + integrate(g, beta - clip, beta + clip, q) +
         integrate(g, beta + clip, inf, q);
}

void check_side(int side) {
  if (side != 1 && side != -1) throw std::invalid_argument("fyz: side must be +1 or -1");
}

double sech2(double u) {
  const double ch = std::cosh(u);
  return std::isinf(ch) ? 0.0 : 1.0 / (ch * ch);
}

}  // namespace

void FyzContext::validate() const {
  if (!(eps >= 0.0 && eps < 0.5)) throw std::invalid_argument("FyzContext: eps must lie in [0, 1/2)");
  if (n < 1) throw std::invalid_argument("FyzContext: n must be >= 1");
}

double eval_tanh_score(const FyzScore& s, double x) {
  const double y = std::clamp(x, -s.c, s.c);
  const double th = std::tanh(s.t * y);
  return s.a * th + s.b * (y - s.t * th);
}

double eval_tanh_score_deriv(const FyzScore& s, double x) {
  if (std::abs(x) >= s.c) return 0.0;
  const double q = sech2(s.t * x);
  return s.a * s.t * q + s.b * (1.0 - s.t * s.t * q);
}

bool tanh_score_monotone(const FyzScore& s) {
  const double k = (s.a - s.b * s.t) * s.t;
  return s.b + k >= 0.0 && s.b + k * sech2(s.t * s.c) >= 0.0 && eval_tanh_score(s, s.c) > 0.0;
}

BoundedScore hampel_score(const HampelIC& ic) {
  BoundedScore s;
  s.psi = [ic](double x) { return eval_ic(ic, x); };
  s.dpsi = [ic](double x) { return std::abs(x - ic.z) < ic.c ? ic.A : 0.0; };
  s.sup = ic.b;
  s.clip = ic.c;
  return s;
}

BoundedScore tanh_score(const FyzScore& sc) {
  if (!(sc.c > 0.0)) throw std::invalid_argument("tanh_score: c must be positive");
  BoundedScore s;
  s.psi = [sc](double x) { return eval_tanh_score(sc, x); };
  s.dpsi = [sc](double x) { return eval_tanh_score_deriv(sc, x); };
  s.sup = eval_tanh_score(sc, sc.c);
  s.clip = sc.c;
  return s;
}

double fyz_bias(const BoundedScore& score, const FyzContext& ctx, int side) {
  ctx.validate();
  check_side(side);
  if (ctx.eps == 0.0) return 0.0;
  const double w = side * ctx.eps * score.sup;
  const auto f = [&](double beta) { return (1.0 - ctx.eps) * normal_expect(score.psi, beta, score.clip) + w; };
  const double flo = f(kBiasLo);
  const double fhi = f(kBiasHi);
  if (!(flo > 0.0 && fhi < 0.0)) throw NumericError("fyz_bias: no root in [-10, 10]");
  return find_root(f, {kBiasLo, kBiasHi, 1e-12});
}

double fyz_variance(const BoundedScore& score, const FyzContext& ctx, int side) {
  const double beta = fyz_bias(score, ctx, side);
  const auto sq = [&](double x) {
    const double p = score.psi(x);
    return p * p;
  };
  const double v1 = (1.0 - ctx.eps) * normal_expect(sq, beta, score.clip) + ctx.eps * score.sup * score.sup;
  const double v2 = (1.0 - ctx.eps) * normal_expect(score.dpsi, beta, score.clip);
  if (!(v2 > 0.0)) throw NumericError("fyz_variance: V2 <= 0");
  return v1 / (v2 * v2);
}

double fyz_risk(const BoundedScore& score, const FyzContext& ctx, int side) {
  const double beta = fyz_bias(score, ctx, side);
  return beta * beta + fyz_variance(score, ctx, side) / static_cast<double>(ctx.n);
}

double fyz_optimal_hampel_c(double r, long n) {
  if (!(r > 0.0)) throw std::invalid_argument("fyz_optimal_hampel_c: r must be positive");
  const FyzContext ctx{r / std::sqrt(static_cast<double>(n)), n};
  ctx.validate();
  const auto risk = [&](double c) {
    try {
      return fyz_risk(hampel_score(make_hampel(c)), ctx);
    } catch (const NumericError&) {
      return kPenalty;
    }
  };
  return minimize_scalar(risk, {0.02, 8.0, 1e-8}).first;
}

FyzOptimum fyz_optimize(double r, long n, int sweeps) {
  if (sweeps < 1) throw std::invalid_argument("fyz_optimize: sweeps must be >= 1");
  const FyzContext ctx{r / std::sqrt(static_cast<double>(n)), n};
  ctx.validate();
  // theta parameterizes (a, b) = (cos theta, sin theta); t = 1, theta = pi/4 is the Hampel score.
  double theta = std::numbers::pi / 4.0;
  double log_t = 0.0;
  double c = fyz_optimal_hampel_c(r, n);
  const auto make = [](double th, double lt, double cc) {
    return FyzScore{std::cos(th), std::sin(th), cc, std::exp(lt)};
  };
  const auto risk = [&](const FyzScore& s) {
    if (!tanh_score_monotone(s)) return kPenalty;
    try {
      return fyz_risk(tanh_score(s), ctx);
    } catch (const NumericError&) {
      return kPenalty;
    }
  };
  double best = risk(make(theta, log_t, c));
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    const double before = best;
    const auto th = minimize_scalar([&](double x) { return risk(make(x, log_t, c)); },
                                    {0.01, std::numbers::pi - 0.01, 1e-7});
    if (th.second < best) {
      theta = th.first;
      best = th.second;
    }
    const auto lt = minimize_scalar([&](double x) { return risk(make(theta, x, c)); }, {-4.0, 3.0, 1e-7});
    if (lt.second < best) {
      log_t = lt.first;
      best = lt.second;
    }
    const auto cc = minimize_scalar([&](double x) { return risk(make(theta, log_t, x)); }, {0.02, 8.0, 1e-7});
    if (cc.second < best) {
      c = cc.first;
      best = cc.second;
    }
    if (before - best < 1e-12 * before) break;
  }
  FyzOptimum out;
  out.score = make(theta, log_t, c);
  out.risk = best;
  // Standardize to an IC at the ideal model and match its sup-norm with a Hampel IC.
  const BoundedScore s = tanh_score(out.score);
  const double slope = normal_expect(s.dpsi, 0.0, s.clip);
  const double b_ic = s.sup / slope;
  const auto sup_gap = [b_ic](double ch) { return make_hampel(ch).b - b_ic; };
  const double lo = 1e-6;
  out.c_hampel = sup_gap(lo) >= 0.0 ? lo : find_root(sup_gap, {lo, 40.0, 1e-10});
  out.hampel_risk = fyz_risk(hampel_score(make_hampel(out.c_hampel)), ctx);
  return out;
}

}  // namespace robrisk
