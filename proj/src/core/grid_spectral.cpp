#include "core/grid_spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "core/error.hpp"

namespace ipm1d {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW plans are created once per size and shared. The planner is not
// thread-safe; fftw_execute_dft on existing plans is.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

  PlanPair get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<Complex> a(n), b(n);
    auto* in = reinterpret_cast<fftw_complex*>(a.data());
    auto* out = reinterpret_cast<fftw_complex*>(b.data());
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p{fftw_plan_dft_1d(len, in, out, FFTW_FORWARD, flags),
               fftw_plan_dft_1d(len, in, out, FFTW_BACKWARD, flags)};
    plans_.emplace(n, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

double alternating_sign(std::size_t i) { return (i % 2 == 0) ? 1.0 : -1.0; }

void require_same_grid(const PeriodicField& a, const PeriodicField& b) {
  if (!(a.grid() == b.grid())) throw ParameterError("fields live on different grids");
}

}  // namespace

// ---------------------------------------------------------------------------
// PeriodicGrid

PeriodicGrid::PeriodicGrid(std::size_t n) : n_(n), dx_(0.0) {
  if (n % 2 != 0) throw ConfigError("grid size must be even");
  if (n < 8) throw ConfigError("grid size must be at least 8");
  dx_ = 2.0 * kPi / static_cast<double>(n);
}

double PeriodicGrid::point(std::size_t j) const noexcept {
  const double ratio = (2.0 * static_cast<double>(j) - static_cast<double>(n_)) /
                       static_cast<double>(n_);
  return kPi * ratio;
}

std::vector<double> PeriodicGrid::points() const {
  std::vector<double> x(n_);
  for (std::size_t j = 0; j < n_; ++j) x[j] = point(j);
  return x;
}

int PeriodicGrid::wavenumber(std::size_t index) const noexcept {
  return index <= n_ / 2 ? static_cast<int>(index)
                         : static_cast<int>(index) - static_cast<int>(n_);
}

std::size_t PeriodicGrid::index_of(int k) const noexcept {
  return k >= 0 ? static_cast<std::size_t>(k) : static_cast<std::size_t>(k + static_cast<int>(n_));
}

std::vector<int> PeriodicGrid::wavenumbers() const {
  std::vector<int> ks;
  ks.reserve(n_);
  for (int k = -nyquist() + 1; k <= nyquist(); ++k) ks.push_back(k);
  return ks;
}

PeriodicGrid make_grid(std::size_t n) { return PeriodicGrid(n); }

// ---------------------------------------------------------------------------
// Transforms

std::vector<Complex> forward_transform(const PeriodicGrid& grid, std::span<const double> values) {
  const std::size_t n = grid.size();
  if (values.size() != n) throw ParameterError("value count does not match grid size");
  std::vector<Complex> in(values.begin(), values.end());
  std::vector<Complex> out(n);
  fftw_execute_dft(plan_cache().get(n).forward, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] *= alternating_sign(i) * inv_n;
  return out;
}

std::vector<double> inverse_transform(const PeriodicGrid& grid, std::span<const Complex> spectrum) {
  const std::size_t n = grid.size();
  if (spectrum.size() != n) throw ParameterError("spectrum length does not match grid size");
  std::vector<Complex> in(n);
  for (std::size_t i = 0; i < n; ++i) in[i] = alternating_sign(i) * spectrum[i];
  std::vector<Complex> out(n);
  fftw_execute_dft(plan_cache().get(n).backward, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  std::vector<double> values(n);
  for (std::size_t j = 0; j < n; ++j) values[j] = out[j].real();
  return values;
}

// ---------------------------------------------------------------------------
// PeriodicField

PeriodicField PeriodicField::from_values(const PeriodicGrid& grid, std::vector<double> values) {
  if (values.size() != grid.size()) throw ParameterError("value count does not match grid size");
  auto spectrum = forward_transform(grid, values);
  // Real input: make the stored spectrum exactly conjugate symmetric.
  const std::size_t n = grid.size();
  spectrum[0] = {spectrum[0].real(), 0.0};
  spectrum[n / 2] = {spectrum[n / 2].real(), 0.0};
  for (std::size_t i = 1; i < n / 2; ++i) {
    const Complex avg = 0.5 * (spectrum[i] + std::conj(spectrum[n - i]));
    spectrum[i] = avg;
    spectrum[n - i] = std::conj(avg);
  }
  return PeriodicField(grid, std::move(values), std::move(spectrum));
}

PeriodicField PeriodicField::from_spectrum(const PeriodicGrid& grid, std::vector<Complex> spectrum) {
  const std::size_t n = grid.size();
  if (spectrum.size() != n) throw ParameterError("spectrum length does not match grid size");
  double scale = 0.0;
  for (const auto& c : spectrum) scale = std::max(scale, std::abs(c));
  const double tol = 1e-12 * std::max(scale, std::numeric_limits<double>::min());
  auto fail = [] { throw ParameterError("spectrum is not conjugate symmetric"); };
  if (std::abs(spectrum[0].imag()) > tol || std::abs(spectrum[n / 2].imag()) > tol) fail();
  for (std::size_t i = 1; i < n / 2; ++i) {
    if (std::abs(spectrum[i] - std::conj(spectrum[n - i])) > tol) fail();
  }
  spectrum[0] = {spectrum[0].real(), 0.0};
  spectrum[n / 2] = {spectrum[n / 2].real(), 0.0};
  for (std::size_t i = 1; i < n / 2; ++i) spectrum[n - i] = std::conj(spectrum[i]);
  auto values = inverse_transform(grid, spectrum);
  return PeriodicField(grid, std::move(values), std::move(spectrum));
}

PeriodicField PeriodicField::from_function(const PeriodicGrid& grid,
                                           const std::function<double(double)>& f) {
  std::vector<double> values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) values[j] = f(grid.point(j));
  return from_values(grid, std::move(values));
}

PeriodicField PeriodicField::constant(const PeriodicGrid& grid, double c) {
  std::vector<Complex> spectrum(grid.size());
  spectrum[0] = c;
  return PeriodicField(grid, std::vector<double>(grid.size(), c), std::move(spectrum));
}

Complex PeriodicField::coefficient(int k) const {
  if (k <= -grid_.nyquist() || k > grid_.nyquist()) return {0.0, 0.0};
  return spectrum_[grid_.index_of(k)];
}

// ---------------------------------------------------------------------------
// Spectral operations

PeriodicField apply_multiplier(const PeriodicField& f, const std::function<Complex(int)>& m,
                               bool keep_nyquist) {
  const auto& grid = f.grid();
  const std::size_t n = grid.size();
  std::vector<Complex> out(n);
  const auto in = f.spectrum();
  for (std::size_t i = 0; i < n; ++i) {
    const int k = grid.wavenumber(i);
    if (k == grid.nyquist() && !keep_nyquist) continue;
    out[i] = m(k) * in[i];
  }
  return PeriodicField::from_spectrum(grid, std::move(out));
}

PeriodicField spectral_derivative(const PeriodicField& f) {
  return apply_multiplier(f, [](int k) { return Complex(0.0, static_cast<double>(k)); });
}

PeriodicField dealias_truncate(const PeriodicField& f) {
  const int cutoff = f.grid().dealias_cutoff();
  return apply_multiplier(f, [cutoff](int k) { return std::abs(k) > cutoff ? 0.0 : 1.0; },
                          /*keep_nyquist=*/cutoff >= f.grid().nyquist());
}

PeriodicField operator+(const PeriodicField& lhs, const PeriodicField& rhs) {
  require_same_grid(lhs, rhs);
  std::vector<double> v(lhs.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = lhs.value(j) + rhs.value(j);
  return PeriodicField::from_values(lhs.grid(), std::move(v));
}

PeriodicField operator-(const PeriodicField& lhs, const PeriodicField& rhs) {
  require_same_grid(lhs, rhs);
  std::vector<double> v(lhs.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = lhs.value(j) - rhs.value(j);
  return PeriodicField::from_values(lhs.grid(), std::move(v));
}

PeriodicField operator*(double s, const PeriodicField& f) {
  std::vector<double> v(f.values().begin(), f.values().end());
  for (auto& x : v) x *= s;
  return PeriodicField::from_values(f.grid(), std::move(v));
}

double max_abs(const PeriodicField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double grid_mean(const PeriodicField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s / static_cast<double>(f.size());
}

double l2_norm(const PeriodicField& f) {
  double s = 0.0;
  for (const auto& c : f.spectrum()) s += std::norm(c);
  return std::sqrt(2.0 * kPi * s);
}

double inner_product(const PeriodicField& f, const PeriodicField& g) {
  require_same_grid(f, g);
  const auto a = f.spectrum();
  const auto b = g.spectrum();
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] * std::conj(b[i])).real();
  return 2.0 * kPi * s;
}

double spectral_tail_fraction(const PeriodicField& f) {
  const auto& grid = f.grid();
  const int cutoff = grid.dealias_cutoff();
  double total = 0.0;
  double tail = 0.0;
  const auto spec = f.spectrum();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double e = std::norm(spec[i]);
    total += e;
    const int k = std::abs(grid.wavenumber(i));
    if (3 * k > 2 * cutoff && k <= cutoff) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

GridExtremum max_abs_slope(const PeriodicField& f) {
  const auto df = spectral_derivative(f);
  GridExtremum best;
  for (std::size_t j = 0; j < df.size(); ++j) {
    const double v = std::abs(df.value(j));
    if (v > best.value) best = {v, f.grid().point(j)};
  }
  if (best.value == 0.0) best.location = f.grid().point(0);
  return best;
}

// ---------------------------------------------------------------------------
// TrigInterpolant

TrigInterpolant::TrigInterpolant(const PeriodicField& f)
    : nyquist_(static_cast<std::size_t>(f.grid().nyquist())) {
  const int nyq = f.grid().nyquist();
  weights_.resize(static_cast<std::size_t>(nyq) + 1);
  weights_[0] = f.coefficient(0);
  for (int k = 1; k < nyq; ++k) weights_[static_cast<std::size_t>(k)] = 2.0 * f.coefficient(k);
  weights_[static_cast<std::size_t>(nyq)] = f.coefficient(nyq);

  double scale = 0.0;
  for (const auto& w : weights_) scale = std::max(scale, std::abs(w));
  const double floor = 4.0 * std::numeric_limits<double>::epsilon() * scale;
  while (weights_.size() > 1 && std::abs(weights_.back()) <= floor) weights_.pop_back();
}

double TrigInterpolant::value(double x) const {
  const Complex z = std::polar(1.0, x);
  Complex acc = 0.0;
  for (auto it = weights_.rbegin(); it != weights_.rend(); ++it) acc = acc * z + *it;
  return acc.real();
}

double TrigInterpolant::derivative(double x) const {
  // d/dx Re sum w_k z^k = Re sum i k w_k z^k; the Nyquist term is dropped
  // to match spectral_derivative.
  const Complex z = std::polar(1.0, x);
  Complex acc = 0.0;
  for (std::size_t k = weights_.size(); k-- > 1;) {
    const Complex w = k == nyquist_ ? Complex(0.0) : weights_[k];
    acc = acc * z + Complex(0.0, static_cast<double>(k)) * w;
  }
  acc *= z;
  return acc.real();
}

}  // namespace ipm1d
