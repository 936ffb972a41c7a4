#include "robrisk/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "robrisk/optclip.hpp"
#include "robrisk/special.hpp"

namespace robrisk {

namespace {

constexpr long kBlock = 1024;

struct Moments {
  long count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  long over = 0;
  long under = 0;

  void add(double y) {
    ++count;
    const double d = y - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (y - mean);
  }

  static Moments merge(const Moments& a, const Moments& b) {
    if (a.count == 0) return b;
    if (b.count == 0) return a;
    Moments m;
    m.count = a.count + b.count;
    const double na = static_cast<double>(a.count);
    const double nb = static_cast<double>(b.count);
    const double d = b.mean - a.mean;
    m.mean = a.mean + d * nb / (na + nb);
    m.m2 = a.m2 + b.m2 + d * d * na * nb / (na + nb);
    m.over = a.over + b.over;
    m.under = a.under + b.under;
    return m;
  }
};

struct BlockResult {
  std::vector<Moments> per_c;
  long rejected = 0;
};

/// Sum of clamp(x_i - t, -c, c); clipped terms are counted so that an exactly
/// balanced plateau yields 0 without rounding noise.
double score_sum(const std::vector<double>& x, double c, double t, long& active) {
  double s = 0.0;
  long clipped = 0;
  active = 0;
  for (double xi : x) {
    const double d = xi - t;
    if (d >= c) {
      ++clipped;
    } else if (d <= -c) {
      --clipped;
    } else {
      s += d;
      ++active;
    }
  }
  return s + c * static_cast<double>(clipped);
}

/// Zero of the linear piece of S between adjacent breakpoints t0 and t1,
/// extrapolated from S(t0).
double linear_zero(const std::vector<double>& x, double c, double t0, double t1) {
  long active = 0;
  const double mid = 0.5 * (t0 + t1);
  score_sum(x, c, mid, active);
  if (active == 0) return t0;  // flat piece: S(t0) differs from 0 only by rounding
  long dummy = 0;
  const double s0 = score_sum(x, c, t0, dummy);
  return std::clamp(t0 + s0 / static_cast<double>(active), std::min(t0, t1), std::max(t0, t1));
}

BlockResult run_block(const SimConfig& cfg, const std::vector<HampelIC>& ics, double a, long begin, long end) {
  BlockResult out;
  out.per_c.resize(ics.size());
  const double p = cfg.r / std::sqrt(static_cast<double>(cfg.n));
  const long k_max = (cfg.n + 1) / 2 - 1;  // ceil(n/2) - 1
  const double thr = a / std::sqrt(static_cast<double>(cfg.n));
  const double scale = static_cast<double>(cfg.n);
  std::vector<double> sample(static_cast<std::size_t>(cfg.n));
  for (long i = begin; i < end; ++i) {
    SplitMix64 gen(stream_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    std::binomial_distribution<long> binom(cfg.n, p);
    const long k = p > 0.0 ? binom(gen) : 0;
    if (cfg.condition_breakdown && k > k_max) {
      ++out.rejected;
      continue;
    }
    std::normal_distribution<double> normal;
    for (long j = 0; j < cfg.n - k; ++j) sample[j] = normal(gen);
    for (long j = cfg.n - k; j < cfg.n; ++j) sample[j] = cfg.dirac;
    for (std::size_t m = 0; m < ics.size(); ++m) {
      const double t = m_estimate(sample, ics[m]);
      Moments& acc = out.per_c[m];
      acc.add(scale * t * t);
      if (t >= thr) ++acc.over;
      if (t <= -thr) ++acc.under;
    }
  }
  return out;
}

/// Merge in a fixed binary-tree order over block indices.
BlockResult reduce_tree(const std::vector<BlockResult>& blocks, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return blocks[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  BlockResult a = reduce_tree(blocks, lo, mid);
  const BlockResult b = reduce_tree(blocks, mid, hi);
  for (std::size_t m = 0; m < a.per_c.size(); ++m) a.per_c[m] = Moments::merge(a.per_c[m], b.per_c[m]);
  a.rejected += b.rejected;
  return a;
}

SimResult finish(const Moments& m, long rejected) {
  SimResult res;
  res.reps_used = m.count;
  res.reps_rejected = rejected;
  res.mse = m.mean;
  const double used = static_cast<double>(m.count);
  res.mse_stderr = m.count > 1 ? std::sqrt(m.m2 / (used - 1.0)) / std::sqrt(used) : 0.0;
  res.overshoot = static_cast<double>(m.over) / used;
  res.undershoot = static_cast<double>(m.under) / used;
  res.overshoot_stderr = std::sqrt(res.overshoot * (1.0 - res.overshoot) / used);
  res.undershoot_stderr = std::sqrt(res.undershoot * (1.0 - res.undershoot) / used);
  return res;
}

}  // namespace

void SimConfig::validate() const {
  if (reps < 1) throw std::invalid_argument("SimConfig: reps must be >= 1");
  if (n < 1) throw std::invalid_argument("SimConfig: n must be >= 1");
  if (!(r >= 0.0) || !(r < std::sqrt(static_cast<double>(n))))
    throw std::invalid_argument("SimConfig: r must lie in [0, sqrt(n))");
  if (!(c > 0.0)) throw std::invalid_argument("SimConfig: c must be positive");
  if (!(std::abs(dirac) > c + 1.0)) throw std::invalid_argument("SimConfig: |dirac| must exceed c + 1");
}

SplitMix64::result_type SplitMix64::operator()() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 a(seed);
  const std::uint64_t base = a();
  SplitMix64 b(base ^ (index * 0xD1B54A32D192ED03ULL));
  return b();
}

double m_estimate(const std::vector<double>& sample, const HampelIC& ic) {
  if (sample.empty()) throw NumericError("m_estimate: empty sample");
  const double c = ic.c;
  if (std::isinf(c)) {
    double s = 0.0;
    for (double x : sample) s += x;
    return s / static_cast<double>(sample.size());
  }
  // S(t) = sum clamp(x_i - t, -c, c) is non-increasing and piecewise linear with
  // kinks at x_i -/+ c. The estimate is the midpoint of [L, R], L = sup{S > 0},
  // R = inf{S < 0}.
  std::vector<double> bp;
  bp.reserve(2 * sample.size());
  for (double x : sample) {
    bp.push_back(x - c);
    bp.push_back(x + c);
  }
  std::sort(bp.begin(), bp.end());
  const auto value = [&](double t) {
    long active = 0;
    return score_sum(sample, c, t, active);
  };
  // Last breakpoint with S > 0 (bp.front() qualifies) and first with S < 0.
  const auto first_nonpos = std::partition_point(bp.begin(), bp.end(), [&](double t) { return value(t) > 0.0; });
  const auto first_neg = std::partition_point(first_nonpos, bp.end(), [&](double t) { return value(t) >= 0.0; });
  if (first_nonpos == bp.begin() || first_neg == bp.end()) throw NumericError("m_estimate: no sign change");
  const double left = linear_zero(sample, c, *(first_nonpos - 1), *first_nonpos);
  const double right = linear_zero(sample, c, *first_neg, *(first_neg - 1));
  return 0.5 * (left + right);
}

std::vector<SimResult> run_mse_grid(const SimConfig& cfg, const std::vector<double>& c_values, double a, Exec exec) {
  cfg.validate();
  if (c_values.empty()) throw std::invalid_argument("run_mse_grid: empty clipping grid");
  if (!(a > 0.0)) throw std::invalid_argument("run_mse_grid: a must be positive");
  std::vector<HampelIC> ics;
  ics.reserve(c_values.size());
  for (double c : c_values) {
    if (!(std::abs(cfg.dirac) > c + 1.0)) throw std::invalid_argument("run_mse_grid: |dirac| must exceed c + 1");
    ics.push_back(make_hampel(c));
  }
  const long nblocks = (cfg.reps + kBlock - 1) / kBlock;
  std::vector<BlockResult> blocks(static_cast<std::size_t>(nblocks));
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long b = 0; b < nblocks; ++b)
      blocks[b] = run_block(cfg, ics, a, b * kBlock, std::min(cfg.reps, (b + 1) * kBlock));
  } else {
    for (long b = 0; b < nblocks; ++b)
      blocks[b] = run_block(cfg, ics, a, b * kBlock, std::min(cfg.reps, (b + 1) * kBlock));
  }
  const BlockResult total = reduce_tree(blocks, 0, blocks.size());
  if (total.per_c.front().count == 0)
    throw NumericError("simulate: every replication was rejected by the breakdown condition");
  std::vector<SimResult> out;
  out.reserve(ics.size());
  for (const Moments& m : total.per_c) out.push_back(finish(m, total.rejected));
  return out;
}

SimResult run_mse(const SimConfig& cfg, Exec exec) { return run_mse_grid(cfg, {cfg.c}, 1.0, exec).front(); }

SimResult run_overshoot(const SimConfig& cfg, double a, Exec exec) {
  return run_mse_grid(cfg, {cfg.c}, a, exec).front();
}

std::pair<double, double> optimize_c_exact(double r, long n, long reps, std::uint64_t seed, Exec exec) {
  if (!(r > 0.0)) throw std::invalid_argument("optimize_c_exact: r must be positive");
  const double c0 = solve_c0(r);
  constexpr int kPoints = 21;
  std::vector<double> grid(kPoints);
  for (int i = 0; i < kPoints; ++i) grid[i] = c0 * (0.3 + 0.9 * i / (kPoints - 1));
  SimConfig cfg;
  cfg.r = r;
  cfg.n = n;
  cfg.reps = reps;
  cfg.seed = seed;
  cfg.c = grid.back();
  const std::vector<SimResult> res = run_mse_grid(cfg, grid, 1.0, exec);
  int best = 0;
  for (int i = 1; i < kPoints; ++i)
    if (res[i].mse < res[best].mse) best = i;
  if (best == 0 || best == kPoints - 1) return {grid[best], res[best].mse};
  const double x0 = grid[best - 1], x1 = grid[best], x2 = grid[best + 1];
  const double y0 = res[best - 1].mse, y1 = res[best].mse, y2 = res[best + 1].mse;
  const double den = (x0 - x1) * (x0 - x2) * (x1 - x2);
  const double qa = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / den;
  const double qb = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / den;
  if (!(qa > 0.0)) return {x1, y1};
  const double vertex = std::clamp(-qb / (2.0 * qa), x0, x2);
  cfg.c = vertex;
  const SimResult at_vertex = run_mse_grid(cfg, {vertex}, 1.0, exec).front();
  if (at_vertex.mse < y1) return {vertex, at_vertex.mse};
  return {x1, y1};
}

}  // namespace robrisk
