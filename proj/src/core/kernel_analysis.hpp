#pragma once
//==============================================================================
// Closed-form kernels of the velocity law and numerical verification of the
// kernel inequalities behind the blow-up argument.
//
//   K_a(y)   = a^2 / (pi y (y^2 + a^2))                  (odd, pole at 0)
//   Q_a(y)   = (1/pi) log(|y| / sqrt(y^2 + a^2))          (antiderivative of K_a)
//   G_a(x,y) = (1/2pi) log( (1 + a^2/x^2) / (1 + a^2/(x-y)^2)
//                         * (1 + a^2/(2pi-x)^2) / (1 + a^2/(x-y+2pi sgn(y-x))^2) )
//
// For class functions f (even, nonnegative, f(0) = 0, f' >= 0 on [0, pi)):
//   H_a f(x) <= int_0^{2x} f'(y) G_a(x,y) dy,   0 < x <= pi/2.
//==============================================================================

#include <functional>
#include <string>
#include <vector>

namespace ipm1d {

double kernel_ka(double y, double a);
double kernel_qa(double y, double a);
/// Requires 0 < x <= pi/2, 0 <= y <= 2x, y != x.
double kernel_ga(double x, double y, double a);

namespace detail {
/// G_a without the range checks, for the monotonicity claims that extend
/// past x = pi/2. Requires x > 0, y != x, y - x != +-2pi.
double kernel_ga_unchecked(double x, double y, double a);
}  // namespace detail

struct KernelCheck {
  std::string name;
  bool passed = false;
  double location = 0.0;  // worst-case abscissa
  double margin = 0.0;    // >= 0 iff the claim holds at the stated tolerance
};

struct KernelReport {
  double a = 1.0;
  double q = 1.5;
  double sigma = 1.5;
  std::vector<KernelCheck> checks;

  bool all_passed() const;
};

/// Monotone decrease on [0, x), increase on (x, 2x], and G_a <= 1e-14,
/// sampled with m points per side outside a 1e-8 neighbourhood of y = x.
std::vector<KernelCheck> verify_ga_shape(double x, double a, int m);

/// x_* = 2 pi q / ((q + 1)(q - 1)), the zero of G_a(x,qx) - G_a(x,x/q).
double crossing_point(double q);
/// G_a(x,qx) - G_a(x,x/q) from its closed form (valid for any x > 0).
double ga_crossing_difference(double x, double q, double a);

/// G_a(x,qx) >= G_a(x,x/q) on (0, pi/2], -G_a(x,qx) decreasing on (0, 2pi/q],
/// G_a(2pi/q, 2pi) = 0 and -G_a(pi/2, q pi/2) > 0.
std::vector<KernelCheck> verify_ga_q_claims(double a, double q, int m);

/// A member of the blow-up class given in closed form.
struct ClassFunction {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// 1 - cos x, (1 - cos x)^2 and |sin(x/2)|^3.
std::vector<ClassFunction> standard_blowup_family();

/// Scales a class function by lambda > 0.
ClassFunction scaled(const ClassFunction& f, double lambda);

/// Samples f on an n-point grid and applies check_blowup_class.
bool in_blowup_class(const ClassFunction& f, double tol = 1e-9, std::size_t n = 512);

struct Lemma44Result {
  double lhs = 0.0;  // H_a f(x)
  double rhs = 0.0;  // int_0^{2x} f'(y) G_a(x,y) dy
  bool holds = false;
};

/// Throws PreconditionError if f is not in the blow-up class.
Lemma44Result check_lemma44(const ClassFunction& f, double a, double x);

struct KeyRatio {
  double lhs = 0.0;  // -int_0^{pi/2} H_a f f' / x^sigma
  double rhs = 0.0;  // int_0^{pi/2} f^2 / x^{1+sigma}
};
KeyRatio key_inequality_sides(const ClassFunction& f, double a, double sigma, int panels = 8);

/// min over the family of lhs / rhs; an empirical lower bound on C_{a,sigma}
/// for this family, not the sharp constant. Members with rhs = 0 are skipped.
/// Throws PreconditionError if a member is outside the class or no member
/// has rhs > 0.
double estimate_key_constant(double a, double sigma, const std::vector<ClassFunction>& family);

struct KernelSuiteOptions {
  int samples = 1000;
  int lemma_points = 32;
};

/// Every kernel claim for one (a, q, sigma).
KernelReport run_kernel_suite(double a, double q, double sigma, const KernelSuiteOptions& opts = {});

}  // namespace ipm1d
