#include "robrisk/relrisk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "robrisk/optclip.hpp"
#include "robrisk/special.hpp"

namespace robrisk {

double rel_mse1(double c, double r, const SampleSize& n) {
  const double c0 = solve_c0(r);
  return asmse_so(make_hampel(c), r, n) / asmse_so(make_hampel(c0), r, n);
}

double rel_mse0(double c, double r) {
  const double c0 = solve_c0(r);
  return asmse_fo(make_hampel(c), r) / asmse_fo(make_hampel(c0), r);
}

double ratio_deviation_pct(double ratio) { return (std::max(ratio, 1.0 / ratio) - 1.0) * 100.0; }

double delta_c(double c, double r) {
  const HampelIC ic = make_hampel(c);
  const double v02 = ideal_variance(ic);
  const double b2 = ic.b * ic.b;
  return (b2 - v02) / (r * r * b2 + v02);
}

double envelope_at(double rho, double r, int c_points) {
  if (!(rho >= 0.0)) throw std::invalid_argument("envelope: rho must be >= 0");
  if (!(r > 0.0)) throw std::invalid_argument("envelope: r must be positive");
  if (rho == 0.0) return 0.0;
  c_points = std::max(c_points, 3);
  const double c0 = solve_c0(r);
  const double base = delta_c(c0, r);
  const double lo = c0 / (1.0 + rho);
  const double hi = c0 * (1.0 + rho);
  auto gain = [r, base](double c) { return r * (delta_c(c, r) - base); };

  int best = 0;
  double best_val = -1.0;
  const double step = (hi - lo) / (c_points - 1);
  for (int k = 0; k < c_points; ++k) {
    const double v = gain(lo + step * k);
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  const double a = lo + step * std::max(best - 1, 0);
  const double b = lo + step * std::min(best + 1, c_points - 1);
  if (b - a > 1e-9) {
    const auto [x, fx] = minimize_scalar([&gain](double c) { return -gain(c); }, {a, b, 1e-10});
    (void)x;
    best_val = std::max(best_val, -fx);
  }
  return std::max(best_val, 0.0);
}

std::vector<double> default_envelope_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 300; ++k) grid.push_back(k / 100.0);
  return grid;
}

EnvelopeResult envelope(double rho, const std::vector<double>& r_grid, int c_points, Exec exec) {
  if (r_grid.empty()) throw std::invalid_argument("envelope: empty r grid");
  const auto count = static_cast<long>(r_grid.size());
  std::vector<double> values(r_grid.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) values[i] = envelope_at(rho, r_grid[i], c_points);
  } else {
    for (long i = 0; i < count; ++i) values[i] = envelope_at(rho, r_grid[i], c_points);
  }
  EnvelopeResult out;
  out.series.reserve(r_grid.size());
  out.max = values[0];
  out.argmax_r = r_grid[0];
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    out.series.emplace_back(r_grid[i], values[i]);
    if (values[i] > out.max) {
      out.max = values[i];
      out.argmax_r = r_grid[i];
    }
  }
  return out;
}

RelRiskReport rel_risk_report(double c, double r, const SampleSize& n, double rho) {
  RelRiskReport rep;
  rep.rel0 = rel_mse0(c, r);
  rep.rel1 = rel_mse1(c, r, n);
  rep.delta_c = delta_c(c, r);
  rep.rho = rho;
  rep.envelope_r = envelope_at(rho, r);
  rep.envelope = envelope(rho, default_envelope_grid()).max;
  return rep;
}

}  // namespace robrisk
