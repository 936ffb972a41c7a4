#pragma once

// Tabular reproduction artifacts and their CSV / JSON serialization.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "robrisk/exec.hpp"

namespace robrisk {

/// Empty cells are serialized as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, double, long, std::string>;

struct Column {
  std::string name;
  int digits = 3;  ///< decimals kept for double cells (round half to even)
};

struct Table {
  std::string id;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

enum class TableId { clip, risk, radius, cniper, envelope, mse_curves };

/// "clip-table", "risk-table", ...; throws std::invalid_argument for unknown names.
TableId parse_table_id(const std::string& name);
std::string to_string(TableId id);

struct TableOptions {
  long reps = 0;  ///< Monte-Carlo replications for simulation columns; 0 omits them
  std::uint64_t seed = 1;
  double rho = 0.1;  ///< envelope clipping range
  long curve_n = 30;
  Exec exec = Exec::parallel;
};

/// c1, asmse1 and relmse1 over r in {0.1, 0.25, 0.5, 1} and n in {5, 10, 30, 50, 100, inf}.
Table clip_table();

/// c0, c1, c2, c_fzy and, when reps > 0, the simulated c_ex, MSE_n(c_ex) and
/// relative excess risks of the analytic heights.
Table risk_table(const TableOptions& opt = {});

/// Minimax radii for gamma in {0, 2, 3} (0 = unrestricted) and the n grid of clip_table.
Table radius_table(const TableOptions& opt = {});

/// Cniper points and test risks at the unrestricted minimax radius for
/// n in {5, 10, 30, 50, 100, 200, 300, inf}.
Table cniper_table(const TableOptions& opt = {});

/// (r, envelope) pairs on r = 0.01, ..., 3.00.
Table envelope_series(const TableOptions& opt = {});

/// Clipping heights and maximal risks of every order as functions of r at n = curve_n.
Table mse_curves(const TableOptions& opt = {});

Table build_table(TableId id, const TableOptions& opt = {});

/// Round half to even at the given number of decimals.
double round_half_even(double x, int digits);

void write_csv(const Table& t, std::ostream& os);
void write_json(const Table& t, std::ostream& os);

}  // namespace robrisk
