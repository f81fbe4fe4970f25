#pragma once
//==============================================================================
// Scalar diagnostics of saved states: norms, mean, slope, BKM integral, the
// boundary functional
//
//   J(t) = int_0^{pi/2} rho(x,t) / x^{1+delta} dx,
//
// and a Riccati comparison fit J' >= c J^2. Everything here is a pure
// function of snapshots; no solver state is consulted.
//==============================================================================

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "core/grid_spectral.hpp"
#include "core/solver.hpp"

namespace ipm1d {

struct Norms {
  double linf = 0.0;
  double l2 = 0.0;
  double hs = 0.0;  // homogeneous H^s seminorm
  double mean = 0.0;
};

/// linf from the grid, l2 by Parseval, hs = (2 pi sum |k|^{2s} |c_k|^2)^{1/2}
/// over |k| < n/2. Throws ParameterError for s < 2.
Norms compute_norms(const PeriodicField& f, int s);

/// J for the given delta in (0,1). Off-grid values come from the
/// trigonometric series. Throws PreconditionError if f is outside the
/// blow-up class at tolerance class_tol * max(1, |f|_inf).
double compute_j(const PeriodicField& f, double delta, double class_tol = 1e-8);

/// -g int_0^{pi/2} (H_a rho)(d/dx rho) / x^{1+delta} dx, the value of J'
/// implied by the equation. Same precondition as compute_j.
double j_derivative_identity(const PeriodicField& f, double a, double g, double delta,
                             double class_tol = 1e-8);

struct RiccatiFit {
  double c_hat = 0.0;
  double t_star_bound = std::numeric_limits<double>::infinity();
  // Relative RMS spread of J'/J^2 about its mean; 0 for an exact Riccati solution.
  double residual = 0.0;
  bool conclusive = false;  // c_hat > 0
  std::size_t samples = 0;
};

struct JSample {
  double t = 0.0;
  double j = 0.0;
};

/// c_hat = min over interior samples of J'/J^2 with J' from three-point
/// centered differences (nonuniform spacing allowed);
/// t_star_bound = t_0 + 1/(c_hat J_0). Throws ParameterError with fewer
/// than 8 samples, non-increasing times or J <= 0.
RiccatiFit fit_riccati(std::span<const JSample> series);

struct SymmetryReport {
  double evenness_defect = 0.0;  // max_j |f(x_j) - f(-x_j)|
  double min_value = 0.0;
  double origin_value = 0.0;     // |f(0)|
  double min_slope_right = 0.0;  // min of f' over grid points in [0, pi)
};

SymmetryReport symmetry_monotonicity_report(const PeriodicField& f);

struct DiagnosticsOptions {
  int s = 3;
  double delta = 0.5;
  double class_tol = 1e-8;  // relative to max(1, |rho|_inf)
};

struct DiagnosticsRecord {
  double t = 0.0;
  double linf = 0.0;
  double l2 = 0.0;
  double hs = 0.0;
  double mean = 0.0;
  double slope_max = 0.0;
  double slope_argmax = 0.0;
  double bkm = 0.0;
  double j_value = 0.0;  // NaN when the state has left the class
  double tail_fraction = 0.0;
};

DiagnosticsRecord make_record(const SimState& state, const DiagnosticsOptions& opts);

/// One record per state, computed concurrently; order preserved.
std::vector<DiagnosticsRecord> make_records(std::span<const SimState> states,
                                            const DiagnosticsOptions& opts);

/// Leading run of records with finite j_value, as a J series.
std::vector<JSample> j_series(std::span<const DiagnosticsRecord> records);

}  // namespace ipm1d
