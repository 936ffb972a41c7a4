#include "robrisk/radius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "robrisk/optclip.hpp"
#include "robrisk/special.hpp"

namespace robrisk {

namespace {

constexpr int kScanPoints = 60;
// The f-o inefficiency keeps increasing towards its r -> inf limit; 1e4 reaches it
// to well below the reported precision.
constexpr double kUnboundedHi = 1e4;

struct ClipStats {
  double c = 0.0;
  double b2 = 0.0;
  double v2 = 0.0;
};

struct Criterion {
  RiskOrder order = RiskOrder::first;
  SampleSize n = SampleSize::infinite();

  ClipStats stats(double r) const {
    ClipStats s;
    s.c = (order == RiskOrder::first || n.is_infinite()) ? solve_c0(r) : solve_c1(r, n.value());
    const HampelIC ic = make_hampel(s.c);
    s.b2 = ic.b * ic.b;
    s.v2 = ideal_variance(ic);
    return s;
  }

  double risk(const ClipStats& s, double r) const {
    const double fo = r * r * s.b2 + s.v2;
    if (order == RiskOrder::first) return fo;
    return fo + r * n.inv_sqrt() * (s.v2 + s.b2 * (1.0 + 2.0 * r * r));
  }

  double ineff(const ClipStats& num, double r) const { return risk(num, r) / risk(stats(r), r); }
};

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g(points);
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / (points - 1);
  for (int i = 0; i < points; ++i) g[i] = std::exp(a + step * i);
  g.front() = lo;
  g.back() = hi;
  return g;
}

/// Optimum of f over [lo, hi] by a log-spaced scan followed by Brent refinement
/// in log r between the neighbours of the best scan point. Returns (x, f(x)).
template <typename F>
std::pair<double, double> scan_refine(F&& f, double lo, double hi, int points, bool maximize) {
  const std::vector<double> g = log_grid(lo, hi, points);
  const double sgn = maximize ? -1.0 : 1.0;
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    const double v = sgn * f(g[i]);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double a = std::log(g[std::max(best - 1, 0)]);
  const double b = std::log(g[std::min(best + 1, points - 1)]);
  auto [u, fu] = minimize_scalar([&](double t) { return sgn * f(std::exp(t)); }, {a, b, 1e-12});
  if (fu < best_val) return {std::exp(u), sgn * fu};
  return {g[best], sgn * best_val};
}

/// sup over the grid of true radii, with precomputed denominators.
class SupGrid {
 public:
  SupGrid(const Criterion& crit, double lo, double hi, int points, Exec exec)
      : crit_(crit), lo_(lo), hi_(hi), grid_(log_grid(lo, hi, points)), den_(grid_.size()) {
    const long m = static_cast<long>(grid_.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
      for (long i = 0; i < m; ++i) den_[i] = crit_.risk(crit_.stats(grid_[i]), grid_[i]);
    } else {
      for (long i = 0; i < m; ++i) den_[i] = crit_.risk(crit_.stats(grid_[i]), grid_[i]);
    }
  }

  std::pair<double, double> sup(double r_prime) const {
    const ClipStats num = crit_.stats(r_prime);
    int best = 0;
    double best_val = -1.0;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      const double v = crit_.risk(num, grid_[i]) / den_[i];
      if (v > best_val) {
        best_val = v;
        best = static_cast<int>(i);
      }
    }
    const int m = static_cast<int>(grid_.size());
    const double a = std::log(grid_[std::max(best - 1, 0)]);
    const double b = std::log(grid_[std::min(best + 1, m - 1)]);
    auto [u, fu] = minimize_scalar([&](double t) { return -crit_.ineff(num, std::exp(t)); }, {a, b, 1e-12});
    if (-fu > best_val) return {std::exp(u), -fu};
    return {grid_[best], best_val};
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  Criterion crit_;
  double lo_;
  double hi_;
  std::vector<double> grid_;
  std::vector<double> den_;
};

double default_hi(RiskOrder order, const SampleSize& n) {
  if (order == RiskOrder::first || n.is_infinite()) return kUnboundedHi;
  return std::min(kUnboundedHi, (1.0 - 1e-9) * n.sqrt());
}

std::pair<double, double> window_impl(const Criterion& crit, double r, double gamma, double lo, double hi,
                                      const RadiusOptions& opt) {
  const double wlo = std::max(lo, r / gamma);
  const double whi = std::min(hi, r * gamma);
  const SupGrid grid(crit, wlo, whi, opt.sup_points, opt.exec);
  return scan_refine([&grid](double rp) { return grid.sup(rp).second; }, wlo, whi, kScanPoints / 2, false);
}

RadiusResult minimax_impl(const Criterion& crit, double gamma, const RadiusOptions& opt) {
  const double lo = opt.r_lo;
  const double hi = opt.r_hi > 0.0 ? opt.r_hi : default_hi(crit.order, crit.n);
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("minimax_radius: need 0 < r_lo < r_hi");
  if (crit.order == RiskOrder::second && hi >= crit.n.sqrt())
    throw std::invalid_argument("minimax_radius: r_hi must be < sqrt(n)");
  if (opt.sup_points < 3) throw std::invalid_argument("minimax_radius: sup_points must be >= 3");
  if (gamma == 0.0) gamma = std::numeric_limits<double>::infinity();
  if (!(gamma > 1.0)) throw std::invalid_argument("minimax_radius: gamma must exceed 1 (or be 0 / inf)");

  RadiusResult out;
  out.gamma = gamma;
  out.order = crit.order;
  out.n = crit.n;

  if (std::isinf(gamma)) {
    const SupGrid grid(crit, lo, hi, opt.sup_points, opt.exec);
    auto [r_star, value] =
        scan_refine([&grid](double rp) { return grid.sup(rp).second; }, lo, hi, kScanPoints, false);
    out.r_star = r_star;
    out.r_inner = r_star;
    out.ineff = value - 1.0;
  } else {
    // Least favourable centre r of the window [r/gamma, r gamma] inside [lo, hi].
    auto inner = [&](double r) { return window_impl(crit, r, gamma, lo, hi, opt); };
    auto [r_center, value] = scan_refine([&inner](double r) { return inner(r).second; }, lo * gamma,
                                         hi / gamma, kScanPoints / 2, true);
    out.r_star = r_center;
    out.r_inner = inner(r_center).first;
    out.ineff = value - 1.0;
  }
  out.c_star = crit.stats(out.r_star).c;
  return out;
}

}  // namespace

std::string to_string(RiskOrder order) { return order == RiskOrder::first ? "first" : "second"; }

double ineff_fo(double r_prime, double r) {
  const Criterion crit{RiskOrder::first, SampleSize::infinite()};
  return crit.ineff(crit.stats(r_prime), r);
}

double ineff_so(double r_prime, double r, const SampleSize& n) {
  if (!n.is_infinite() && (r >= n.sqrt() || r_prime >= n.sqrt()))
    throw std::invalid_argument("ineff_so: radii must be < sqrt(n)");
  const Criterion crit{RiskOrder::second, n};
  return crit.ineff(crit.stats(r_prime), r);
}

std::pair<double, double> max_ineff(RiskOrder order, double r_prime, double lo, double hi, const SampleSize& n,
                                    int points, Exec exec) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("max_ineff: need 0 < lo < hi");
  const SupGrid grid(Criterion{order, n}, lo, hi, std::max(points, 3), exec);
  return grid.sup(r_prime);
}

std::pair<double, double> window_minimax(RiskOrder order, double r, double gamma, const SampleSize& n,
                                         const RadiusOptions& opt) {
  const Criterion crit{order, n};
  const double hi = opt.r_hi > 0.0 ? opt.r_hi : default_hi(order, n);
  if (!(gamma > 1.0) || std::isinf(gamma)) throw std::invalid_argument("window_minimax: need finite gamma > 1");
  if (!(r > 0.0)) throw std::invalid_argument("window_minimax: r must be positive");
  return window_impl(crit, r, gamma, opt.r_lo, hi, opt);
}

RadiusResult minimax_radius_fo(double gamma, const RadiusOptions& opt) {
  return minimax_impl(Criterion{RiskOrder::first, SampleSize::infinite()}, gamma, opt);
}

RadiusResult minimax_radius_so(double gamma, const SampleSize& n, const RadiusOptions& opt) {
  return minimax_impl(Criterion{RiskOrder::second, n}, gamma, opt);
}

}  // namespace robrisk
