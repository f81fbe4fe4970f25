#pragma once
//==============================================================================
// Nonlocal velocity operator H_a, Hilbert transform H and Poisson smoothing
// P_a on the circle, plus a physical-space quadrature oracle for H_a.
//
// H_a f(x) = PV int_R f(x - y) K_a(y) dy,   K_a(y) = a^2 / (pi y (y^2 + a^2)).
//
// Torus mode-k multipliers (convention of grid_spectral.hpp):
//   H_a : -i sgn(k) (1 - exp(-a|k|))
//   H   : -i sgn(k)
//   P_a : exp(-a|k|)
// so that H_a = H (I - P_a). The odd multipliers zero k = 0 and the Nyquist mode.
//==============================================================================

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "core/grid_spectral.hpp"

namespace ipm1d {

struct OperatorParams {
  double a = 1.0;  // boundary-layer thickness
  double g = 1.0;  // gravitational constant

  /// Throws ParameterError unless a > 0 and g > 0.
  static OperatorParams make(double a, double g);
};

Complex ha_multiplier(int k, double a);

PeriodicField apply_ha_spectral(const PeriodicField& f, double a);
PeriodicField apply_hilbert(const PeriodicField& f);
PeriodicField apply_poisson(const PeriodicField& f, double a);

/// The lattice sum sum_{j in Z} K_a(y + 2 pi j) in closed form,
///   sin(y) sinh^2(a/2) / (4 pi sin^2(y/2) (sinh^2(a/2) + sin^2(y/2))).
/// Odd and 2pi-periodic with a 1/(pi y) pole at y = 0.
double periodized_kernel(double y, double a);

struct QuadratureOptions {
  double tolerance = 1e-12;
  unsigned max_depth = 20;
};

/// H_a f(x) from the symmetrized real-line integral
///   int_0^inf (f(x - y) - f(x + y)) K_a(y) dy.
/// The integrand is 2pi-periodic times K_a, so the integral is folded onto
/// (0, pi] with periodized_kernel; no truncation of the real line is needed.
/// Throws NumericError if f returns non-finite samples.
double apply_ha_quadrature(const std::function<double(double)>& f, double a, double x,
                           const QuadratureOptions& opts = {});

struct OperatorIdentityReport {
  double factorization_residual = 0.0;  // |H_a f - H(f - P_a f)|_inf
  double hilbert_gap_l2 = 0.0;          // |(H - H_a) f|_2
  double ha_l2 = 0.0;                   // |H_a f|_2
};

OperatorIdentityReport operator_identity_check(const PeriodicField& f, double a);

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured quantity
  double tolerance = 0.0;  // threshold it was compared against
  std::string detail;
};

struct OperatorSuiteOptions {
  std::size_t n = 256;
  int max_mode = 8;            // sin kx, cos kx for k = 1..max_mode
  int random_fields = 10;
  int random_bandwidth = 16;
  std::uint64_t seed = 20240917;
  std::size_t oracle_stride = 1;  // evaluate the oracle at every stride-th grid point
};

/// The operator property suite for one value of a: oracle agreement,
/// skew-adjointness, L2 contraction, zero mean, parity, factorization and
/// the a -> 0 / a -> infinity limits on mode-1 data.
std::vector<CheckResult> run_operator_suite(double a, const OperatorSuiteOptions& opts = {});

/// Random real band-limited field with modes |k| <= bandwidth.
PeriodicField random_band_limited(const PeriodicGrid& grid, int bandwidth, std::uint64_t seed);

}  // namespace ipm1d
