#pragma once
//==============================================================================
// Uniform periodic grid on [-pi, pi) and real 2pi-periodic fields.
//
// Transform convention (used everywhere in the library):
//
//   f(x_j) = sum_k c_k exp(i k x_j),   x_j = -pi + 2 pi j / n,
//   c_k    = (1/n) sum_j f(x_j) exp(-i k x_j),
//
// with k in {-n/2+1, ..., n/2}. Spectra are stored in FFT order: index i
// holds mode k = i for i <= n/2 and k = i - n otherwise. The Nyquist mode
// k = n/2 is kept in the spectrum but every odd multiplier zeroes it.
//==============================================================================

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ipm1d {

using Complex = std::complex<double>;

class PeriodicGrid {
 public:
  explicit PeriodicGrid(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return dx_; }

  /// x_j = -pi + 2 pi j / n; exact at j = 0, n/4, n/2, 3n/4 for n divisible by 4.
  double point(std::size_t j) const noexcept;
  std::vector<double> points() const;

  /// Mode number held at spectrum index i (FFT order).
  int wavenumber(std::size_t index) const noexcept;
  std::size_t index_of(int k) const noexcept;
  /// All wavenumbers, ascending: -n/2+1 ... n/2.
  std::vector<int> wavenumbers() const;

  int nyquist() const noexcept { return static_cast<int>(n_ / 2); }
  /// Largest |k| kept by the 2/3 rule.
  int dealias_cutoff() const noexcept { return static_cast<int>(n_ / 3); }
  /// Grid index of x = 0.
  std::size_t origin_index() const noexcept { return n_ / 2; }

  bool operator==(const PeriodicGrid& other) const noexcept { return n_ == other.n_; }

 private:
  std::size_t n_;
  double dx_;
};

PeriodicGrid make_grid(std::size_t n);

/// Immutable real field: physical samples and their spectrum.
class PeriodicField {
 public:
  static PeriodicField from_values(const PeriodicGrid& grid, std::vector<double> values);
  /// Rejects spectra that are not conjugate symmetric (relative 1e-12).
  static PeriodicField from_spectrum(const PeriodicGrid& grid, std::vector<Complex> spectrum);
  static PeriodicField from_function(const PeriodicGrid& grid,
                                     const std::function<double(double)>& f);
  static PeriodicField constant(const PeriodicGrid& grid, double c);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return grid_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const Complex> spectrum() const noexcept { return spectrum_; }
  double value(std::size_t j) const { return values_[j]; }
  Complex coefficient(int k) const;

 private:
  PeriodicField(PeriodicGrid grid, std::vector<double> values, std::vector<Complex> spectrum)
      : grid_(grid), values_(std::move(values)), spectrum_(std::move(spectrum)) {}

  PeriodicGrid grid_;
  std::vector<double> values_;
  std::vector<Complex> spectrum_;
};

// Raw transforms in the convention above.
std::vector<Complex> forward_transform(const PeriodicGrid& grid, std::span<const double> values);
std::vector<double> inverse_transform(const PeriodicGrid& grid, std::span<const Complex> spectrum);

/// Applies c_k -> m(k) c_k. The Nyquist coefficient is zeroed unless
/// keep_nyquist is set (only even, real multipliers may keep it).
PeriodicField apply_multiplier(const PeriodicField& f, const std::function<Complex(int)>& m,
                               bool keep_nyquist = false);

PeriodicField spectral_derivative(const PeriodicField& f);
PeriodicField dealias_truncate(const PeriodicField& f);

PeriodicField operator+(const PeriodicField& lhs, const PeriodicField& rhs);
PeriodicField operator-(const PeriodicField& lhs, const PeriodicField& rhs);
PeriodicField operator*(double s, const PeriodicField& f);

double max_abs(const PeriodicField& f);
double grid_mean(const PeriodicField& f);
/// Continuous L2 norm over one period, (int |f|^2 dx)^{1/2}, by Parseval.
double l2_norm(const PeriodicField& f);
/// Continuous inner product int f g dx over one period.
double inner_product(const PeriodicField& f, const PeriodicField& g);
/// Share of sum |c_k|^2 carried by the top third of the dealiased band,
/// (2/3) kc < |k| <= kc with kc = dealias_cutoff().
double spectral_tail_fraction(const PeriodicField& f);

struct GridExtremum {
  double value = 0.0;
  double location = 0.0;
};
/// max_j |f'(x_j)| and where it is attained (grid points only).
GridExtremum max_abs_slope(const PeriodicField& f);

/// Exact evaluation of the trigonometric series of a field at arbitrary x.
/// Trailing modes whose coefficients are at roundoff level are dropped.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const PeriodicField& f);

  double value(double x) const;
  double derivative(double x) const;
  int bandwidth() const noexcept { return static_cast<int>(weights_.size()) - 1; }

 private:
  // f(x) = Re sum_{k>=0} w_k exp(i k x); w_0 = c_0, w_k = 2 c_k, w_{n/2} = c_{n/2}.
  std::vector<Complex> weights_;
  std::size_t nyquist_;
};

}  // namespace ipm1d
