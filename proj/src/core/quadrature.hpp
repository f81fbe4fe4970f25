#pragma once
// Thin wrappers over Boost.Math quadrature used by the oracles and the
// boundary functionals.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <functional>

#include "core/error.hpp"

namespace ipm1d::quad {

namespace detail {
template <class F>
double adaptive_step(F& f, double lo, double hi, double abs_tol, unsigned depth) {
  using rule = boost::math::quadrature::gauss_kronrod<double, 61>;
  double err = 0.0;
  const double v = rule::integrate(f, lo, hi, 0, 0.0, &err);
  // Boost reports the single-panel error in reference coordinates on [-1, 1].
  if (depth == 0 || 0.5 * (hi - lo) * err <= abs_tol) return v;
  const double mid = 0.5 * (lo + hi);
  return adaptive_step(f, lo, mid, abs_tol, depth - 1) + adaptive_step(f, mid, hi, abs_tol, depth - 1);
}
}  // namespace detail

/// One-pass estimate of int |f| over [lo, hi].
template <class F>
double l1_estimate(F&& f, double lo, double hi) {
  using rule = boost::math::quadrature::gauss_kronrod<double, 61>;
  double err = 0.0, l1 = 0.0;
  (void)rule::integrate(f, lo, hi, 0, 0.0, &err, &l1);
  return l1;
}

/// Adaptive Gauss-Kronrod (61 points) on [lo, hi], bisecting until each
/// panel's error estimate is below tol * scale, where scale defaults to the
/// L1 norm of f on [lo, hi]. The bound is not split between halves: Kronrod
/// estimates bottom out at roundoff, and a shrinking per-panel target would
/// force every panel to full depth. Unlike a purely relative test this
/// terminates when the integral vanishes.
template <class F>
double adaptive(F&& f, double lo, double hi, double tol, unsigned max_depth = 20, double scale = 0.0) {
  if (!(scale > 0.0)) scale = l1_estimate(f, lo, hi);
  const double v = detail::adaptive_step(f, lo, hi, tol * scale, max_depth);
  if (!std::isfinite(v)) throw NumericError("quadrature produced a non-finite value");
  return v;
}

/// Double-exponential rule; tolerates integrable endpoint singularities.
template <class F>
double endpoint_singular(F&& f, double lo, double hi, double tol) {
  // Non-const: this Boost release only declares the finite-interval
  // overload on a non-const rule. One instance per thread.
  thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
  double err = 0.0;
  const double v = rule.integrate(f, lo, hi, tol, &err);
  if (!std::isfinite(v)) throw NumericError("quadrature produced a non-finite value");
  return v;
}

/// Graded rule for int_0^L h(x) dx where h has an algebraic singularity or
/// loss of smoothness at x = 0: substitutes x = L s^4 and applies `panels`
/// equal panels of 20-point Gauss-Legendre in s.
template <class F>
double graded(F&& h, double length, int panels) {
  using rule = boost::math::quadrature::gauss<double, 20>;
  const double width = 1.0 / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double s0 = p * width;
    const double s1 = s0 + width;
    total += rule::integrate(
        [&](double s) {
          const double s2 = s * s;
          const double x = length * s2 * s2;
          const double jac = 4.0 * length * s2 * s;
          return h(x) * jac;
        },
        s0, s1);
  }
  if (!std::isfinite(total)) throw NumericError("graded quadrature produced a non-finite value");
  return total;
}

}  // namespace ipm1d::quad
