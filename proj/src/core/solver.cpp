#include "core/solver.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/operators.hpp"

namespace ipm1d {

namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw NumericError(std::string("non-finite value in ") + what);
  }
}

// Tendency spectrum for a state spectrum. Both factors are truncated to
// |k| <= n/3 before the physical-space product, and the product after it.
std::vector<Complex> tendency(const PeriodicGrid& grid, std::span<const Complex> rho_hat,
                              const SolverConfig& cfg) {
  const std::size_t n = grid.size();
  const int cutoff = grid.dealias_cutoff();
  std::vector<Complex> u_hat(n), dx_hat(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int k = grid.wavenumber(i);
    if (std::abs(k) > cutoff) continue;
    u_hat[i] = cfg.g * ha_multiplier(k, cfg.a) * rho_hat[i];
    dx_hat[i] = Complex(0.0, static_cast<double>(k)) * rho_hat[i];
  }
  const auto u = inverse_transform(grid, u_hat);
  const auto rho_x = inverse_transform(grid, dx_hat);
  std::vector<double> product(n);
  for (std::size_t j = 0; j < n; ++j) product[j] = -u[j] * rho_x[j];
  require_finite(product, "tendency");
  auto out = forward_transform(grid, product);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(grid.wavenumber(i)) > cutoff) out[i] = 0.0;
  }
  // The product of two real fields: restore exact conjugate symmetry.
  out[0] = {out[0].real(), 0.0};
  for (std::size_t i = 1; i < n / 2; ++i) out[n - i] = std::conj(out[i]);
  return out;
}

std::vector<Complex> axpy(std::span<const Complex> x, double alpha, std::span<const Complex> y) {
  std::vector<Complex> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + alpha * y[i];
  return out;
}

bool reached(double t, double target) {
  return std::abs(t - target) <= 1e-12 * std::max(1.0, std::abs(target));
}

}  // namespace

void SolverConfig::validate() const {
  auto bad = [](const std::string& key, const std::string& rule) {
    throw ConfigError("invalid value for \"" + key + "\": " + rule);
  };
  if (n % 2 != 0 || n < 8) bad("n", "must be an even integer >= 8");
  if (!(a > 0.0) || !std::isfinite(a)) bad("a", "must be positive");
  if (!(g > 0.0) || !std::isfinite(g)) bad("g", "must be positive");
  if (!(cfl > 0.0 && cfl <= 1.0)) bad("cfl", "must lie in (0, 1]");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) bad("t_end", "must be nonnegative");
  if (!(slope_stop > 0.0)) bad("slope_stop", "must be positive");
  if (!(tail_stop > 0.0 && tail_stop < 1.0)) bad("tail_stop", "must lie in (0, 1)");
  if (!(output_every > 0.0) || !std::isfinite(output_every)) bad("output_every", "must be positive");
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::time_reached: return "time_reached";
    case StopReason::slope_threshold: return "slope_threshold";
    case StopReason::resolution_lost: return "resolution_lost";
    case StopReason::nonfinite_value: return "nonfinite_value";
  }
  return "unknown";
}

StopReason stop_reason_from_string(std::string_view s) {
  for (auto r : {StopReason::time_reached, StopReason::slope_threshold, StopReason::resolution_lost,
                 StopReason::nonfinite_value}) {
    if (to_string(r) == s) return r;
  }
  throw ParameterError("unknown stop reason: " + std::string(s));
}

PeriodicField rhs(const SimState& state, const SolverConfig& cfg) {
  const auto& grid = state.field.grid();
  return PeriodicField::from_spectrum(grid, tendency(grid, state.field.spectrum(), cfg));
}

PeriodicField velocity(const PeriodicField& rho, const SolverConfig& cfg) {
  const int cutoff = rho.grid().dealias_cutoff();
  return apply_multiplier(rho, [&](int k) {
    return std::abs(k) > cutoff ? Complex(0.0) : cfg.g * ha_multiplier(k, cfg.a);
  });
}

double cfl_dt(const SimState& state, const SolverConfig& cfg) {
  const double umax = max_abs(velocity(state.field, cfg));
  const double dt = cfg.cfl * state.field.grid().spacing() / std::max(umax, kVelocityFloor);
  return std::min(dt, cfg.output_every);
}

SimState step_rk4(const SimState& state, double dt, const SolverConfig& cfg) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("time step must be positive");
  const auto& grid = state.field.grid();
  const auto y0 = state.field.spectrum();

  const auto k1 = tendency(grid, y0, cfg);
  const auto k2 = tendency(grid, axpy(y0, 0.5 * dt, k1), cfg);
  const auto k3 = tendency(grid, axpy(y0, 0.5 * dt, k2), cfg);
  const auto k4 = tendency(grid, axpy(y0, dt, k3), cfg);

  std::vector<Complex> next(y0.size());
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < next.size(); ++i) {
    next[i] = y0[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  auto field = PeriodicField::from_spectrum(grid, std::move(next));
  require_finite(field.values(), "state");

  const double slope_old = max_abs_slope(state.field).value;
  const double slope_new = max_abs_slope(field).value;
  return SimState{std::move(field), state.t + dt, state.bkm + 0.5 * dt * (slope_old + slope_new)};
}

RunResult run(const SolverConfig& cfg, const PeriodicField& rho0) {
  cfg.validate();
  if (rho0.size() != cfg.n) throw ConfigError("initial field size does not match \"n\"");
  require_finite(rho0.values(), "initial data");

  RunResult result;
  SimState state{dealias_truncate(rho0), 0.0, 0.0};
  result.trajectory.push_back(state);

  std::size_t next_index = 1;
  auto next_output = [&] { return std::min(cfg.output_every * static_cast<double>(next_index), cfg.t_end); };
  bool last_pushed = true;

  while (!(state.t >= cfg.t_end || reached(state.t, cfg.t_end))) {
    const double target = next_output();
    const double dt = std::min(cfl_dt(state, cfg), target - state.t);
    SimState next{PeriodicField::constant(state.field.grid(), 0.0)};
    try {
      next = step_rk4(state, dt, cfg);
    } catch (const NumericError&) {
      result.reason = StopReason::nonfinite_value;
      break;
    }
    ++result.steps;
    if (reached(next.t, target)) next.t = target;
    state = std::move(next);
    last_pushed = false;

    if (state.t == target) {
      result.trajectory.push_back(state);
      last_pushed = true;
      ++next_index;
    }

    const double slope = max_abs_slope(state.field).value;
    const double tail = spectral_tail_fraction(state.field);
    result.stop_slope = slope;
    result.stop_tail = tail;
    if (slope >= cfg.slope_stop) {
      result.reason = StopReason::slope_threshold;
      break;
    }
    if (tail >= cfg.tail_stop) {
      result.reason = StopReason::resolution_lost;
      break;
    }
  }
  if (!last_pushed) result.trajectory.push_back(state);
  if (result.steps == 0) {
    result.stop_slope = max_abs_slope(state.field).value;
    result.stop_tail = spectral_tail_fraction(state.field);
  }
  return result;
}

bool check_blowup_class(const PeriodicField& f, double tol) {
  const auto& grid = f.grid();
  const std::size_t n = grid.size();
  const auto df = spectral_derivative(f);
  const double slope_max = max_abs(df);

  if (std::abs(f.value(grid.origin_index())) > tol) return false;
  for (std::size_t j = 0; j < n; ++j) {
    if (f.value(j) < -tol) return false;
    if (std::abs(f.value(j) - f.value((n - j) % n)) > tol) return false;
  }
  for (std::size_t j = grid.origin_index(); j < n; ++j) {  // x_j in [0, pi)
    if (df.value(j) < -tol * (1.0 + slope_max)) return false;
  }
  return true;
}

}  // namespace ipm1d
