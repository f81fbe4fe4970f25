#include "core/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "core/error.hpp"
#include "core/quadrature.hpp"

namespace ipm1d {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_a(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw ParameterError("parameter a must be positive and finite");
  }
}

double sgn(int k) { return k > 0 ? 1.0 : (k < 0 ? -1.0 : 0.0); }

// Largest |h(x_j) + parity * h(-x_j)|: parity = +1 measures oddness defect,
// parity = -1 measures evenness defect.
double reflection_defect(const PeriodicField& h, double parity) {
  const std::size_t n = h.size();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t mirror = (n - j) % n;
    worst = std::max(worst, std::abs(h.value(j) + parity * h.value(mirror)));
  }
  return worst;
}

CheckResult make_check(std::string name, double value, double tol, bool passed,
                       std::string detail = {}) {
  return CheckResult{std::move(name), passed, value, tol, std::move(detail)};
}

}  // namespace

OperatorParams OperatorParams::make(double a, double g) {
  if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("a must be positive (got a <= 0)");
  if (!(g > 0.0) || !std::isfinite(g)) throw ParameterError("g must be positive (got g <= 0)");
  return OperatorParams{a, g};
}

Complex ha_multiplier(int k, double a) {
  // 1 - exp(-a|k|) via expm1 keeps relative accuracy for tiny a.
  const double damp = -std::expm1(-a * std::abs(static_cast<double>(k)));
  return {0.0, -sgn(k) * damp};
}

PeriodicField apply_ha_spectral(const PeriodicField& f, double a) {
  require_positive_a(a);
  return apply_multiplier(f, [a](int k) { return ha_multiplier(k, a); });
}

PeriodicField apply_hilbert(const PeriodicField& f) {
  return apply_multiplier(f, [](int k) { return Complex(0.0, -sgn(k)); });
}

PeriodicField apply_poisson(const PeriodicField& f, double a) {
  require_positive_a(a);
  return apply_multiplier(
      f, [a](int k) { return Complex(std::exp(-a * std::abs(static_cast<double>(k))), 0.0); },
      /*keep_nyquist=*/true);
}

double periodized_kernel(double y, double a) {
  require_positive_a(a);
  const double s = std::sin(0.5 * y);
  if (s == 0.0) throw DomainError("periodized kernel has a pole at y = 0 mod 2pi");
  const double s2 = s * s;
  // s^2 / sinh^2(a/2), written to avoid overflow for large a.
  const double half = 0.5 * a;
  double ratio = 0.0;
  if (half < 350.0) {
    const double sh = std::sinh(half);
    ratio = s2 / (sh * sh);
  }
  return std::sin(y) / (4.0 * kPi * s2 * (1.0 + ratio));
}

double apply_ha_quadrature(const std::function<double(double)>& f, double a, double x,
                           const QuadratureOptions& opts) {
  require_positive_a(a);
  auto integrand = [&](double y) {
    const double left = f(x - y);
    const double right = f(x + y);
    if (!std::isfinite(left) || !std::isfinite(right)) {
      throw NumericError("function returned a non-finite sample");
    }
    return (left - right) * periodized_kernel(y, a);
  };
  // The kernel changes character at |y| ~ a and decays like a^2/y^3 past
  // it; geometric breakpoints from 0.1a keep each piece within reach of
  // bisection when a is tiny.
  std::vector<double> breaks{0.0};
  for (double b = 0.1 * a; b < kPi; b *= 10.0) breaks.push_back(b);
  breaks.push_back(kPi);
  // One absolute error scale for all pieces: a short piece near y = 0
  // carries little mass but the most roundoff, and when f is locally
  // even about x the integrand is pure roundoff. The size of f itself
  // keeps the target meaningful in both cases.
  double scale = 0.0;
  for (int i = 0; i < 64; ++i) scale = std::max(scale, std::abs(f(x - kPi + kPi * i / 32.0)));
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    scale += quad::l1_estimate(integrand, breaks[i], breaks[i + 1]);
  }
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    total += quad::adaptive(integrand, breaks[i], breaks[i + 1], opts.tolerance, opts.max_depth, scale);
  }
  return total;
}

OperatorIdentityReport operator_identity_check(const PeriodicField& f, double a) {
  require_positive_a(a);
  const auto ha = apply_ha_spectral(f, a);
  const auto factored = apply_hilbert(f - apply_poisson(f, a));
  const auto gap = apply_hilbert(f) - ha;
  return OperatorIdentityReport{max_abs(ha - factored), l2_norm(gap), l2_norm(ha)};
}

PeriodicField random_band_limited(const PeriodicGrid& grid, int bandwidth, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Complex> spec(grid.size());
  const int top = std::min(bandwidth, grid.nyquist() - 1);
  spec[0] = unit(rng);
  for (int k = 1; k <= top; ++k) {
    const Complex c(unit(rng), unit(rng));
    spec[grid.index_of(k)] = c / static_cast<double>(k);
    spec[grid.index_of(-k)] = std::conj(c) / static_cast<double>(k);
  }
  return PeriodicField::from_spectrum(grid, std::move(spec));
}

std::vector<CheckResult> run_operator_suite(double a, const OperatorSuiteOptions& opts) {
  require_positive_a(a);
  const auto grid = make_grid(opts.n);

  struct Named {
    std::string name;
    PeriodicField field;
  };
  std::vector<Named> fields;
  for (int k = 1; k <= opts.max_mode; ++k) {
    const double kk = k;
    fields.push_back({"sin" + std::to_string(k) + "x",
                      PeriodicField::from_function(grid, [kk](double x) { return std::sin(kk * x); })});
    fields.push_back({"cos" + std::to_string(k) + "x",
                      PeriodicField::from_function(grid, [kk](double x) { return std::cos(kk * x); })});
  }
  for (int r = 0; r < opts.random_fields; ++r) {
    fields.push_back({"random" + std::to_string(r),
                      random_band_limited(grid, opts.random_bandwidth, opts.seed + r)});
  }

  std::vector<CheckResult> out;

  // Oracle agreement.
  {
    double worst = 0.0;
    std::string where;
    const std::size_t stride = std::max<std::size_t>(1, opts.oracle_stride);
    for (const auto& [name, f] : fields) {
      const auto ha = apply_ha_spectral(f, a);
      const TrigInterpolant interp(f);
      const auto fn = [&interp](double x) { return interp.value(x); };
      for (std::size_t j = 0; j < grid.size(); j += stride) {
        const double err = std::abs(ha.value(j) - apply_ha_quadrature(fn, a, grid.point(j)));
        if (err > worst) {
          worst = err;
          where = name + " at x=" + std::to_string(grid.point(j));
        }
      }
    }
    out.push_back(make_check("oracle_agreement", worst, 1e-7, worst <= 1e-7, where));
  }

  // Skew-adjointness on consecutive pairs.
  {
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
      const auto& f = fields[i].field;
      const auto& g = fields[i + 1].field;
      const double lhs = inner_product(apply_ha_spectral(f, a), g);
      const double rhs = inner_product(f, apply_ha_spectral(g, a));
      worst = std::max(worst, std::abs(lhs + rhs));
    }
    out.push_back(make_check("skew_adjoint", worst, 1e-10, worst <= 1e-10));
  }

  // L2 contraction, zero mean and parity.
  {
    double worst_ratio = 0.0;
    double worst_mean = 0.0;
    double worst_parity = 0.0;
    for (const auto& [name, f] : fields) {
      const auto ha = apply_ha_spectral(f, a);
      const double norm_f = l2_norm(f);
      if (norm_f > 0.0) worst_ratio = std::max(worst_ratio, l2_norm(ha) / norm_f);
      worst_mean = std::max({worst_mean, std::abs(ha.coefficient(0)), std::abs(grid_mean(ha))});
      if (name.starts_with("cos")) worst_parity = std::max(worst_parity, reflection_defect(ha, 1.0));
      if (name.starts_with("sin")) worst_parity = std::max(worst_parity, reflection_defect(ha, -1.0));
    }
    out.push_back(make_check("l2_contraction", worst_ratio, 1.0 + 1e-14,
                             worst_ratio <= 1.0 + 1e-14, "max |H_a f|_2 / |f|_2"));
    out.push_back(make_check("zero_mean", worst_mean, 1e-14, worst_mean <= 1e-14));
    out.push_back(make_check("parity", worst_parity, 1e-12, worst_parity <= 1e-12,
                             "even -> odd and odd -> even"));
  }

  // Factorization H_a = H (I - P_a).
  {
    double worst = 0.0;
    for (const auto& [name, f] : fields) {
      worst = std::max(worst, operator_identity_check(f, a).factorization_residual);
    }
    out.push_back(make_check("factorization", worst, 1e-12, worst <= 1e-12));
  }

  // Limits on mode-1 data.
  {
    const auto f = PeriodicField::from_function(grid, [](double x) { return std::sin(x); });
    const auto rep = operator_identity_check(f, a);
    const double norm_f = l2_norm(f);
    const double gap_err = std::abs(rep.hilbert_gap_l2 / norm_f - std::exp(-a));
    const double ha_err = std::abs(rep.ha_l2 / norm_f + std::expm1(-a));
    std::ostringstream gap_detail, ha_detail;
    gap_detail << "|(H-H_a)f|/|f| = " << rep.hilbert_gap_l2 / norm_f;
    ha_detail << "|H_a f|/|f| = " << rep.ha_l2 / norm_f;
    out.push_back(make_check("hilbert_gap_limit", gap_err, 1e-10, gap_err <= 1e-10, gap_detail.str()));
    out.push_back(make_check("ha_norm_limit", ha_err, 1e-10, ha_err <= 1e-10, ha_detail.str()));
  }

  return out;
}

}  // namespace ipm1d
