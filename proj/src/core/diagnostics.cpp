#include "core/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <string>
#include <thread>

#include "core/error.hpp"
#include "core/operators.hpp"
#include "core/quadrature.hpp"

namespace ipm1d {

namespace {

constexpr double kPi = std::numbers::pi;

// f(x) - f(0) for a real trigonometric series, written as
//   sum_k -2 a_k sin^2(k x/2) - b_k sin(k x)
// so that values near the origin keep full relative accuracy. A plain
// Horner sum loses everything once f(x) drops below eps * sum |c_k|, and
// J divides by x^{1+delta}.
class OriginOffsetSeries {
 public:
  explicit OriginOffsetSeries(const PeriodicField& f) {
    const int nyq = f.grid().nyquist();
    double scale = 0.0;
    for (int k = 1; k <= nyq; ++k) {
      const Complex w = (k == nyq ? 1.0 : 2.0) * f.coefficient(k);
      re_.push_back(w.real());
      im_.push_back(w.imag());
      scale = std::max(scale, std::abs(w));
    }
    const double floor = 4.0 * std::numeric_limits<double>::epsilon() * scale;
    while (!re_.empty() && std::hypot(re_.back(), im_.back()) <= floor) {
      re_.pop_back();
      im_.pop_back();
    }
  }

  double operator()(double x) const {
    const double c1 = std::cos(0.5 * x);
    const double s1 = std::sin(0.5 * x);
    double c = 1.0, s = 0.0, acc = 0.0;
    for (std::size_t i = 0; i < re_.size(); ++i) {
      const double cn = c * c1 - s * s1;
      s = s * c1 + c * s1;
      c = cn;
      acc += -2.0 * re_[i] * s * s - im_[i] * 2.0 * s * c;
    }
    return acc;
  }

 private:
  std::vector<double> re_, im_;
};

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
}

void require_class(const PeriodicField& f, double class_tol, const char* who) {
  const double tol = class_tol * std::max(1.0, max_abs(f));
  if (!check_blowup_class(f, tol)) {
    throw PreconditionError(std::string(who) + ": field is outside the blow-up class");
  }
}

// Graded quadrature on [0, pi/2], refined by doubling until two successive
// values agree to 1e-12 relative.
template <class H>
double converged_graded(H&& h) {
  int panels = 8;
  double prev = quad::graded(h, 0.5 * kPi, panels);
  while (panels < 1024) {
    panels *= 2;
    const double next = quad::graded(h, 0.5 * kPi, panels);
    if (std::abs(next - prev) <= 1e-12 * std::abs(next)) return next;
    prev = next;
  }
  return prev;
}

}  // namespace

Norms compute_norms(const PeriodicField& f, int s) {
  if (s < 2) throw ParameterError("Sobolev index s must be an integer >= 2");
  const auto& grid = f.grid();
  const auto spec = f.spectrum();
  double sum = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const int k = grid.wavenumber(i);
    if (k == grid.nyquist()) continue;
    sum += std::pow(std::abs(static_cast<double>(k)), 2.0 * s) * std::norm(spec[i]);
  }
  return Norms{max_abs(f), l2_norm(f), std::sqrt(2.0 * kPi * sum), grid_mean(f)};
}

double compute_j(const PeriodicField& f, double delta, double class_tol) {
  require_delta(delta);
  require_class(f, class_tol, "compute_j");
  // rho(0) is within tolerance of zero but x^{-1-delta} is not integrable,
  // so the integrand uses rho(x) - rho(0).
  const OriginOffsetSeries rho(f);
  const double p = 1.0 + delta;
  return converged_graded([&](double x) { return x == 0.0 ? 0.0 : rho(x) / std::pow(x, p); });
}

double j_derivative_identity(const PeriodicField& f, double a, double g, double delta,
                             double class_tol) {
  require_delta(delta);
  require_class(f, class_tol, "j_derivative_identity");
  const TrigInterpolant u(apply_ha_spectral(f, a));
  const TrigInterpolant rho(f);
  const double p = 1.0 + delta;
  return -g * converged_graded([&](double x) {
    return x == 0.0 ? 0.0 : u.value(x) * rho.derivative(x) / std::pow(x, p);
  });
}

RiccatiFit fit_riccati(std::span<const JSample> series) {
  if (series.size() < 8) throw ParameterError("Riccati fit needs at least 8 samples");
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!(series[i].j > 0.0) || !std::isfinite(series[i].j)) {
      throw ParameterError("Riccati fit needs strictly positive J");
    }
    if (i > 0 && !(series[i].t > series[i - 1].t)) {
      throw ParameterError("Riccati fit needs increasing sample times");
    }
  }

  std::vector<double> ratios;
  for (std::size_t i = 1; i + 1 < series.size(); ++i) {
    const double h0 = series[i].t - series[i - 1].t;
    const double h1 = series[i + 1].t - series[i].t;
    // Second-order derivative on a nonuniform stencil.
    const double dj = (-h1 / (h0 * (h0 + h1))) * series[i - 1].j +
                      ((h1 - h0) / (h0 * h1)) * series[i].j +
                      (h0 / (h1 * (h0 + h1))) * series[i + 1].j;
    ratios.push_back(dj / (series[i].j * series[i].j));
  }

  RiccatiFit fit;
  fit.samples = series.size();
  fit.c_hat = *std::min_element(ratios.begin(), ratios.end());
  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  double var = 0.0;
  for (double r : ratios) var += (r - mean) * (r - mean);
  fit.residual = mean != 0.0 ? std::sqrt(var / static_cast<double>(ratios.size())) / std::abs(mean)
                             : std::numeric_limits<double>::infinity();
  fit.conclusive = fit.c_hat > 0.0;
  if (fit.conclusive) fit.t_star_bound = series.front().t + 1.0 / (fit.c_hat * series.front().j);
  return fit;
}

SymmetryReport symmetry_monotonicity_report(const PeriodicField& f) {
  const auto& grid = f.grid();
  const std::size_t n = grid.size();
  const auto df = spectral_derivative(f);
  SymmetryReport r;
  r.min_value = f.value(0);
  r.origin_value = std::abs(f.value(grid.origin_index()));
  r.min_slope_right = df.value(grid.origin_index());
  for (std::size_t j = 0; j < n; ++j) {
    r.evenness_defect = std::max(r.evenness_defect, std::abs(f.value(j) - f.value((n - j) % n)));
    r.min_value = std::min(r.min_value, f.value(j));
  }
  for (std::size_t j = grid.origin_index(); j < n; ++j) {
    r.min_slope_right = std::min(r.min_slope_right, df.value(j));
  }
  return r;
}

DiagnosticsRecord make_record(const SimState& state, const DiagnosticsOptions& opts) {
  const auto& f = state.field;
  const auto norms = compute_norms(f, opts.s);
  const auto slope = max_abs_slope(f);
  DiagnosticsRecord r;
  r.t = state.t;
  r.linf = norms.linf;
  r.l2 = norms.l2;
  r.hs = norms.hs;
  r.mean = norms.mean;
  r.slope_max = slope.value;
  r.slope_argmax = slope.location;
  r.bkm = state.bkm;
  try {
    r.j_value = compute_j(f, opts.delta, opts.class_tol);
  } catch (const PreconditionError&) {
    r.j_value = std::numeric_limits<double>::quiet_NaN();
  }
  r.tail_fraction = spectral_tail_fraction(f);
  return r;
}

std::vector<DiagnosticsRecord> make_records(std::span<const SimState> states,
                                            const DiagnosticsOptions& opts) {
  std::vector<DiagnosticsRecord> out(states.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, states.size()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < states.size(); i += workers) out[i] = make_record(states[i], opts);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

std::vector<JSample> j_series(std::span<const DiagnosticsRecord> records) {
  std::vector<JSample> out;
  for (const auto& r : records) {
    if (!std::isfinite(r.j_value)) break;
    out.push_back({r.t, r.j_value});
  }
  return out;
}

}  // namespace ipm1d
