#pragma once
//==============================================================================
// Method-of-lines integration of
//
//   d/dt rho = -g (H_a rho) (d/dx rho)
//
// on the circle: pseudo-spectral in space with 2/3-rule dealiasing of both
// factors and of the product, classical RK4 in time with a CFL step.
//
// A run never certifies blow-up. It stops on proxies: the slope threshold
// (max |d/dx rho| on the grid) or loss of resolution (spectral tail
// fraction), and reports the accumulated BKM integral int_0^t |d/dx rho|_inf.
//==============================================================================

#include <string>
#include <string_view>
#include <vector>

#include "core/grid_spectral.hpp"

namespace ipm1d {

struct SolverConfig {
  std::size_t n = 1024;
  double a = 1.0;
  double g = 1.0;
  double cfl = 0.4;
  double t_end = 10.0;
  double slope_stop = 1e3;
  double tail_stop = 1e-6;
  double output_every = 0.05;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct SimState {
  PeriodicField field;
  double t = 0.0;
  double bkm = 0.0;  // int_0^t |d/dx rho|_inf ds, trapezoid per step
};

enum class StopReason { time_reached, slope_threshold, resolution_lost, nonfinite_value };

std::string_view to_string(StopReason r);
StopReason stop_reason_from_string(std::string_view s);

/// -g (H_a rho)(d/dx rho) with dealiased factors and product.
/// Throws NumericError on non-finite intermediates.
PeriodicField rhs(const SimState& state, const SolverConfig& cfg);

/// Advection velocity g H_a rho on the grid.
PeriodicField velocity(const PeriodicField& rho, const SolverConfig& cfg);

constexpr double kVelocityFloor = 1e-12;

/// cfl * dx / max(|u|_inf, 1e-12), capped at output_every.
double cfl_dt(const SimState& state, const SolverConfig& cfg);

/// One classical RK4 step. Throws NumericError on non-finite values.
SimState step_rk4(const SimState& state, double dt, const SolverConfig& cfg);

struct RunResult {
  std::vector<SimState> trajectory;  // initial, every output time, final
  StopReason reason = StopReason::time_reached;
  std::size_t steps = 0;
  double stop_slope = 0.0;
  double stop_tail = 0.0;
};

/// Deterministic: identical inputs give bitwise-identical trajectories.
RunResult run(const SolverConfig& cfg, const PeriodicField& rho0);

/// Smooth, nonnegative, even, rho(0) = 0 and rho' >= 0 on [0, pi), up to tol:
/// min f >= -tol, |f(0)| <= tol, max_j |f(x_j) - f(-x_j)| <= tol and
/// min over [0, pi) of f' >= -tol (1 + |f'|_inf).
bool check_blowup_class(const PeriodicField& f, double tol);

}  // namespace ipm1d
