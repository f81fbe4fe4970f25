#pragma once
// Subcommand bodies shared by the C API and the command-line tool. Each
// reports progress through a line sink and returns the process exit status:
// 0 success (a run stopped by a blow-up proxy included), 1 validation, IO
// or failed check, 2 numerical failure.

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "io/config.hpp"

namespace ipm1d::io {

using LineSink = std::function<void(const std::string&)>;

enum ExitStatus : int { kExitOk = 0, kExitInvalid = 1, kExitNumeric = 2 };

struct SimulationOutcome {
  int exit_code = kExitOk;
  std::string reason;
  double t_final = 0.0;
  double bkm = 0.0;
  double c_hat = std::numeric_limits<double>::quiet_NaN();  // NaN without a fit
  double t_star_bound = std::numeric_limits<double>::quiet_NaN();
  std::string error;
};

/// Runs one simulation and writes diagnostics.csv, initial.snapshot,
/// final.snapshot, summary.json and plots into cfg.output_dir.
SimulationOutcome simulate(const RunConfig& cfg, const LineSink& out);
int simulate_cmd(const RunConfig& cfg, const LineSink& out);

int operator_check_cmd(const std::vector<double>& a_values, std::size_t n, const LineSink& out);
int kernel_check_cmd(const std::vector<double>& a_values, double q, double sigma, const LineSink& out);

struct SweepGrid {
  std::vector<double> a;
  std::vector<double> g;
  std::vector<std::size_t> n;
};

/// Cartesian product of the nonempty lists (empty lists keep the base
/// value). One directory per point under base.output_dir plus sweep.csv.
int sweep_cmd(const RunConfig& base, const SweepGrid& grid, const LineSink& out);

}  // namespace ipm1d::io
