#include "cli_app.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "robrisk/cniper.hpp"
#include "robrisk/expansion.hpp"
#include "robrisk/optclip.hpp"
#include "robrisk/overshoot.hpp"
#include "robrisk/radius.hpp"
#include "robrisk/relrisk.hpp"
#include "robrisk/simulate.hpp"
#include "robrisk/special.hpp"
#include "robrisk/tables.hpp"

namespace robrisk::cli {

namespace {

using json = nlohmann::ordered_json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SampleSize parse_n(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "infinity") return SampleSize::infinite();
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("--n must be a positive integer or 'inf', got '" + s + "'");
  }
  if (pos != s.size() || v < 1) throw std::invalid_argument("--n must be a positive integer or 'inf', got '" + s + "'");
  return SampleSize::finite(v);
}

json n_json(const SampleSize& n) { return n.is_infinite() ? json("inf") : json(n.value()); }

Exec exec_of(bool serial) { return serial ? Exec::serial : Exec::parallel; }

void emit(const json& j, std::ostream& out) { out << j.dump(2) << '\n'; }

json clip_json(double r, const SampleSize& n) {
  const ClipSolution s = clip_solution(r, n);
  json j;
  j["r"] = r;
  j["n"] = n_json(n);
  j["c0"] = s.c0;
  j["c1"] = s.c1;
  j["c1_approx"] = s.c1_approx;
  j["c2"] = s.c2;
  if (r > 0.0) {
    j["asmse0"] = asmse_fo(make_hampel(s.c0), r);
    j["asmse1"] = n.is_infinite() ? asmse_fo(make_hampel(s.c1), r) : asmse_so(make_hampel(s.c1), r, n);
    j["asmse2"] = n.is_infinite() ? asmse_fo(make_hampel(s.c2), r) : asmse_to(s.c2, r, n.value());
  } else {
    j["asmse0"] = 1.0;
    j["asmse1"] = 1.0;
    j["asmse2"] = 1.0;
  }
  return j;
}

json sim_json(const SimConfig& cfg, double a, const SimResult& res) {
  json j;
  j["c"] = cfg.c;
  j["r"] = cfg.r;
  j["n"] = cfg.n;
  j["reps"] = cfg.reps;
  j["seed"] = cfg.seed;
  j["a"] = a;
  j["mse"] = res.mse;
  j["mse_stderr"] = res.mse_stderr;
  j["overshoot"] = res.overshoot;
  j["overshoot_stderr"] = res.overshoot_stderr;
  j["undershoot"] = res.undershoot;
  j["undershoot_stderr"] = res.undershoot_stderr;
  j["reps_used"] = res.reps_used;
  j["reps_rejected"] = res.reps_rejected;
  return j;
}

json radius_json(const RadiusResult& res) {
  json j;
  j["gamma"] = std::isinf(res.gamma) ? 0.0 : res.gamma;
  j["order"] = to_string(res.order);
  j["n"] = n_json(res.n);
  j["r_gamma"] = res.r_star;
  j["c_gamma"] = res.c_star;
  j["r_inner"] = res.r_inner;
  j["ineff_pct"] = 100.0 * res.ineff;
  return j;
}

json cniper_json(const CniperReport& rep) {
  json j;
  j["n"] = n_json(rep.n);
  j["order"] = to_string(rep.order);
  j["r"] = rep.r;
  j["c"] = rep.c;
  j["x"] = rep.x;
  j["p0"] = rep.p0;
  j["qn"] = rep.qn;
  j["eps_inf"] = rep.eps_inf;
  j["eps_n"] = rep.eps_n;
  j["beta_complement"] = rep.beta_complement;
  return j;
}

void write_table(const Table& t, const std::string& format, const std::string& path, std::ostream& out) {
  std::ostringstream buf;
  if (format == "csv")
    write_csv(t, buf);
  else
    write_json(t, buf);
  if (path.empty() || path == "-") {
    out << buf.str();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << buf.str();
  f.close();
  if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximal-MSE expansions, optimal clipping and minimax radii for Hampel location M-estimators"};
  app.require_subcommand(1);

  std::string n_str = "inf";
  double r = 0.0;
  double c = 1.0;
  double gamma = 0.0;
  double a = 1.0;
  double rho = 0.1;
  double dirac = 1e6;
  long reps = 1000000;
  std::uint64_t seed = 1;
  bool serial = false;
  bool no_breakdown = false;
  std::string format = "csv";
  std::string out_path;
  std::string table_name;

  auto* clip = app.add_subcommand("clip", "Optimal clipping heights c0, c1, c2 and their maximal risks");
  clip->add_option("--r", r, "Contamination radius")->required()->check(CLI::NonNegativeNumber);
  clip->add_option("--n", n_str, "Sample size or 'inf'")->capture_default_str();

  auto* table = app.add_subcommand("table", "Regenerate a reproduction table");
  table->add_option("table_id", table_name, "clip-table | risk-table | radius-table | cniper-table | envelope-series | mse-curves")
      ->required()
      ->check(CLI::IsMember({"clip-table", "risk-table", "radius-table", "cniper-table", "envelope-series", "mse-curves"}));
  table->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  table->add_option("--out", out_path, "Output file (stdout if omitted)");
  long table_reps = 0;
  long curve_n = 30;
  table->add_option("--reps", table_reps, "Monte-Carlo replications for simulation columns (0 = none)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  table->add_option("--seed", seed, "Random seed")->capture_default_str();
  table->add_option("--rho", rho, "Clipping range of the envelope")->check(CLI::PositiveNumber)->capture_default_str();
  table->add_option("--curve-n", curve_n, "Sample size of mse-curves")->capture_default_str();
  table->add_flag("--serial", serial, "Disable OpenMP parallelism");

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo maximal MSE and over/undershoot frequencies");
  long sim_n = 30;
  sim->add_option("--c", c, "Clipping height")->required();
  sim->add_option("--r", r, "Contamination radius")->required();
  sim->add_option("--n", sim_n, "Sample size")->required();
  sim->add_option("--reps", reps, "Replications")->capture_default_str();
  sim->add_option("--seed", seed, "Random seed")->capture_default_str();
  sim->add_option("--dirac", dirac, "Location of the contaminating point mass")->capture_default_str();
  sim->add_option("--a", a, "Over/undershoot half-length in units of 1/sqrt(n)")->capture_default_str();
  sim->add_flag("--no-breakdown-condition", no_breakdown, "Keep replications beyond the breakdown count");
  sim->add_flag("--serial", serial, "Disable OpenMP parallelism");

  auto* rad = app.add_subcommand("radius", "Minimax radius (first order for n = inf, second order otherwise)");
  rad->add_option("--gamma", gamma, "Radius restriction factor; 0 = unrestricted")->capture_default_str();
  rad->add_option("--n", n_str, "Sample size or 'inf'")->capture_default_str();
  rad->add_flag("--serial", serial, "Disable OpenMP parallelism");

  auto* cn = app.add_subcommand("cniper", "Cniper point and outlier-test risks");
  double cn_r = 0.0;
  cn->add_option("--n", n_str, "Sample size or 'inf'")->capture_default_str();
  cn->add_option("--r", cn_r, "Radius (default: unrestricted minimax radius)");

  auto* ov = app.add_subcommand("overshoot", "Second-order over/undershoot risk of a Hampel estimator");
  ov->add_option("--c", c, "Clipping height")->required();
  ov->add_option("--r", r, "Contamination radius")->required();
  ov->add_option("--n", n_str, "Sample size or 'inf'")->required();
  ov->add_option("--a", a, "Half-length in units of 1/sqrt(n)")->capture_default_str();

  auto* env = app.add_subcommand("envelope", "Envelope of the second-order relative risk correction");
  env->add_option("--rho", rho, "Relative clipping range")->capture_default_str();
  double env_r = 0.0;
  env->add_option("--r", env_r, "Single radius (default: maximum over r = 0.01..3)");
  env->add_flag("--serial", serial, "Disable OpenMP parallelism");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*clip) {
      emit(clip_json(r, parse_n(n_str)), out);
    } else if (*table) {
      TableOptions opt;
      opt.reps = table_reps;
      opt.seed = seed;
      opt.rho = rho;
      opt.curve_n = curve_n;
      opt.exec = exec_of(serial);
      write_table(build_table(parse_table_id(table_name), opt), format, out_path, out);
    } else if (*sim) {
      SimConfig cfg;
      cfg.c = c;
      cfg.r = r;
      cfg.n = sim_n;
      cfg.reps = reps;
      cfg.seed = seed;
      cfg.dirac = dirac;
      cfg.condition_breakdown = !no_breakdown;
      const SimResult res = run_overshoot(cfg, a, exec_of(serial));
      emit(sim_json(cfg, a, res), out);
    } else if (*rad) {
      if (gamma != 0.0 && !(gamma > 1.0)) throw std::invalid_argument("--gamma must be 0 or > 1");
      RadiusOptions ro;
      ro.exec = exec_of(serial);
      const SampleSize n = parse_n(n_str);
      emit(radius_json(n.is_infinite() ? minimax_radius_fo(gamma, ro) : minimax_radius_so(gamma, n, ro)), out);
    } else if (*cn) {
      const SampleSize n = parse_n(n_str);
      emit(cniper_json(cn_r > 0.0 ? cniper_report(cn_r, n) : cniper_at_minimax_radius(n)), out);
    } else if (*ov) {
      const SampleSize n = parse_n(n_str);
      const HampelIC ic = make_hampel(c);
      const MomentCoeffs mc = moment_coeffs(ic);
      const OvershootRisk risk = overshoot_risk(ic, mc, r, n, a);
      const auto [under, over] = overshoot_sides(ScoreRange{ic.inf_psi(), ic.sup_psi()}, mc, r, n, a);
      json j;
      j["c"] = c;
      j["r"] = r;
      j["n"] = n_json(n);
      j["a"] = a;
      j["risk"] = risk.value;
      j["leading"] = risk.leading;
      j["correction"] = risk.correction;
      j["undershoot"] = under;
      j["overshoot"] = over;
      j["delta_prime"] = delta_prime(ic, mc, r, n, a);
      emit(j, out);
    } else if (*env) {
      json j;
      j["rho"] = rho;
      if (env_r > 0.0) {
        j["r"] = env_r;
        j["envelope"] = envelope_at(rho, env_r);
      } else {
        const EnvelopeResult res = envelope(rho, default_envelope_grid(), 200, exec_of(serial));
        j["max"] = res.max;
        j["argmax_r"] = res.argmax_r;
      }
      emit(j, out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::domain_error& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace robrisk::cli
