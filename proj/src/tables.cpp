#include "robrisk/tables.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "robrisk/cniper.hpp"
#include "robrisk/expansion.hpp"
#include "robrisk/fyz.hpp"
#include "robrisk/optclip.hpp"
#include "robrisk/radius.hpp"
#include "robrisk/relrisk.hpp"
#include "robrisk/simulate.hpp"
#include "robrisk/special.hpp"

namespace robrisk {

namespace {

const std::vector<double> kRadii = {0.1, 0.25, 0.5, 1.0};
const std::vector<long> kSizes = {5, 10, 30, 50, 100, 0};  // 0 = inf
const std::vector<long> kCniperSizes = {5, 10, 30, 50, 100, 200, 300, 0};

SampleSize size_of(long n) { return n == 0 ? SampleSize::infinite() : SampleSize::finite(n); }

Cell n_cell(long n) { return n == 0 ? Cell{std::string("inf")} : Cell{n}; }

double risk_of_order(int order, double c, double r, long n) {
  const HampelIC ic = make_hampel(c);
  if (n == 0 || order == 0) return asmse_fo(ic, r);
  if (order == 1) return asmse_so(ic, r, SampleSize::finite(n));
  return asmse_to(c, r, n);
}

std::string format_double(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, round_half_even(x, digits));
  return buf;
}

std::string csv_field(const Cell& cell, int digits) {
  if (std::holds_alternative<std::monostate>(cell)) return "";
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d, digits);
  if (const auto* l = std::get_if<long>(&cell)) return std::to_string(*l);
  const std::string& s = std::get<std::string>(cell);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("Table::add_row: row width does not match columns");
  rows.push_back(std::move(row));
}

TableId parse_table_id(const std::string& name) {
  if (name == "clip-table") return TableId::clip;
  if (name == "risk-table") return TableId::risk;
  if (name == "radius-table") return TableId::radius;
  if (name == "cniper-table") return TableId::cniper;
  if (name == "envelope-series") return TableId::envelope;
  if (name == "mse-curves") return TableId::mse_curves;
  throw std::invalid_argument("unknown table id: " + name);
}

std::string to_string(TableId id) {
  switch (id) {
    case TableId::clip: return "clip-table";
    case TableId::risk: return "risk-table";
    case TableId::radius: return "radius-table";
    case TableId::cniper: return "cniper-table";
    case TableId::envelope: return "envelope-series";
    case TableId::mse_curves: return "mse-curves";
  }
  throw std::logic_error("to_string: bad TableId");
}

double round_half_even(double x, int digits) {
  if (!std::isfinite(x)) return x;
  const double scale = std::pow(10.0, digits);
  return std::nearbyint(x * scale) / scale;
}

Table clip_table() {
  Table t;
  t.id = to_string(TableId::clip);
  t.columns = {{"r", 2},      {"n", 0},      {"c0", 3},     {"c1", 3},     {"c1_approx", 3},
               {"c2", 3},     {"asmse0", 3}, {"asmse1", 3}, {"asmse2", 3}, {"relmse1_pct", 3}};
  for (double r : kRadii) {
    for (long n : kSizes) {
      const ClipSolution s = clip_solution(r, size_of(n));
      const double rel = rel_mse1(s.c1, r, size_of(n));
      t.add_row({r, n_cell(n), s.c0, s.c1, s.c1_approx, s.c2, risk_of_order(0, s.c0, r, n),
                 risk_of_order(1, s.c1, r, n), risk_of_order(2, s.c2, r, n), ratio_deviation_pct(rel)});
    }
  }
  return t;
}

Table risk_table(const TableOptions& opt) {
  Table t;
  t.id = to_string(TableId::risk);
  t.columns = {{"r", 2}, {"n", 0}, {"c0", 3}, {"c1", 3}, {"c2", 3}, {"c_fzy", 3}};
  const bool sim = opt.reps > 0;
  if (sim) {
    for (const char* name : {"c_ex", "mse_ex", "mse_ex_stderr"}) t.columns.push_back({name, 3});
    for (const char* name : {"relmse_ex_c0_pct", "relmse_ex_c1_pct", "relmse_ex_c2_pct", "relmse_ex_c_fzy_pct"})
      t.columns.push_back({name, 3});
  }
  for (double r : kRadii) {
    for (long n : kSizes) {
      const ClipSolution s = clip_solution(r, size_of(n));
      Cell fzy;
      double c_fzy = std::nan("");
      if (n != 0) {
        try {
          c_fzy = fyz_optimize(r, n).c_hampel;
          fzy = c_fzy;
        } catch (const NumericError&) {
        } catch (const std::invalid_argument&) {
        }
      }
      std::vector<Cell> row = {r, n_cell(n), s.c0, s.c1, s.c2, fzy};
      if (sim) {
        if (n == 0) {
          row.resize(t.columns.size());
        } else {
          const auto [c_ex, mse_ex] = optimize_c_exact(r, n, opt.reps, opt.seed, opt.exec);
          (void)mse_ex;
          SimConfig cfg;
          cfg.r = r;
          cfg.n = n;
          cfg.reps = opt.reps;
          cfg.seed = opt.seed;
          std::vector<double> cs = {c_ex, s.c0, s.c1, s.c2};
          if (!std::isnan(c_fzy)) cs.push_back(c_fzy);
          const std::vector<SimResult> res = run_mse_grid(cfg, cs, 1.0, opt.exec);
          const auto rel = [&](std::size_t i) { return Cell{(res[i].mse / res[0].mse - 1.0) * 100.0}; };
          row.insert(row.end(), {c_ex, res[0].mse, res[0].mse_stderr, rel(1), rel(2), rel(3)});
          row.push_back(cs.size() > 4 ? rel(4) : Cell{});
        }
      }
      t.add_row(std::move(row));
    }
  }
  return t;
}

Table radius_table(const TableOptions& opt) {
  Table t;
  t.id = to_string(TableId::radius);
  t.columns = {{"gamma", 0}, {"n", 0}, {"r_gamma", 3}, {"c_gamma", 3}, {"ineff_pct", 2}, {"r_inner", 3}};
  RadiusOptions ro;
  ro.exec = opt.exec;
  for (long gamma : {0L, 2L, 3L}) {
    for (long n : kSizes) {
      const double g = static_cast<double>(gamma);
      const RadiusResult res = n == 0 ? minimax_radius_fo(g, ro) : minimax_radius_so(g, size_of(n), ro);
      t.add_row({gamma, n_cell(n), res.r_star, res.c_star, 100.0 * res.ineff, res.r_inner});
    }
  }
  return t;
}

Table cniper_table(const TableOptions& opt) {
  Table t;
  t.id = to_string(TableId::cniper);
  t.columns = {{"n", 0},      {"r_gamma", 3},         {"c1", 3},    {"x1", 3},
               {"p0", 4},     {"beta_complement", 3}, {"eps_n", 3}, {"eps_inf", 3}};
  RadiusOptions ro;
  ro.exec = opt.exec;
  for (long n : kCniperSizes) {
    const CniperReport rep = cniper_at_minimax_radius(size_of(n), ro);
    t.add_row({n_cell(n), rep.r, rep.c, rep.x, rep.p0, rep.beta_complement, rep.eps_n, rep.eps_inf});
  }
  return t;
}

Table envelope_series(const TableOptions& opt) {
  Table t;
  t.id = to_string(TableId::envelope);
  t.columns = {{"r", 2}, {"envelope", 5}};
  const EnvelopeResult env = envelope(opt.rho, default_envelope_grid(), 200, opt.exec);
  for (const auto& [r, v] : env.series) t.add_row({r, v});
  return t;
}

Table mse_curves(const TableOptions& opt) {
  if (opt.curve_n < 2) throw std::invalid_argument("mse_curves: n must be >= 2");
  Table t;
  t.id = to_string(TableId::mse_curves);
  t.columns = {{"r", 2},         {"n", 0},         {"c0", 4},        {"c1", 4},        {"c2", 4},
               {"asmse0_c0", 4}, {"asmse1_c0", 4}, {"asmse1_c1", 4}, {"asmse2_c0", 4}, {"asmse2_c2", 4}};
  const long n = opt.curve_n;
  const double r_max = std::min(3.0, 0.99 * std::sqrt(static_cast<double>(n)));
  for (int i = 1; 0.05 * i <= r_max + 1e-12; ++i) {
    const double r = 0.05 * i;
    const ClipSolution s = clip_solution(r, SampleSize::finite(n));
    t.add_row({r, n, s.c0, s.c1, s.c2, risk_of_order(0, s.c0, r, n), risk_of_order(1, s.c0, r, n),
               risk_of_order(1, s.c1, r, n), risk_of_order(2, s.c0, r, n), risk_of_order(2, s.c2, r, n)});
  }
  return t;
}

Table build_table(TableId id, const TableOptions& opt) {
  switch (id) {
    case TableId::clip: return clip_table();
    case TableId::risk: return risk_table(opt);
    case TableId::radius: return radius_table(opt);
    case TableId::cniper: return cniper_table(opt);
    case TableId::envelope: return envelope_series(opt);
    case TableId::mse_curves: return mse_curves(opt);
  }
  throw std::logic_error("build_table: bad TableId");
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << t.columns[j].name;
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << csv_field(row[j], t.columns[j].digits);
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t j = 0; j < row.size(); ++j) {
      const std::string& key = t.columns[j].name;
      const Cell& cell = row[j];
      if (std::holds_alternative<std::monostate>(cell)) {
        obj[key] = nullptr;
      } else if (const auto* d = std::get_if<double>(&cell)) {
        if (std::isfinite(*d))
          obj[key] = round_half_even(*d, t.columns[j].digits);
        else
          obj[key] = format_double(*d, 0);
      } else if (const auto* l = std::get_if<long>(&cell)) {
        obj[key] = *l;
      } else {
        obj[key] = std::get<std::string>(cell);
      }
    }
    out.push_back(std::move(obj));
  }
  os << out.dump(2) << '\n';
}

}  // namespace robrisk
