#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/kernel_analysis.hpp"

using namespace ipm1d;
using std::numbers::pi;

namespace {

ClassFunction zero_function() {
  return {"zero", [](double) { return 0.0; }, [](double) { return 0.0; }};
}

ClassFunction one_minus_cos() { return standard_blowup_family().front(); }

// G_a straight from its definition as a log of a product of ratios, for
// points away from the singular line.
double ga_direct(double x, double y, double a) {
  auto r = [a](double z) { return 1 + a * a / (z * z); };
  const double s = y > x ? 1.0 : -1.0;
  return std::log(r(x) / r(x - y) * r(2 * pi - x) / r(x - y + 2 * pi * s)) / (2 * pi);
}

}  // namespace

TEST_CASE("K_a and Q_a closed forms") {
  for (double a : {0.1, 1.0, 10.0}) {
    CHECK(kernel_ka(a, a) == doctest::Approx(1 / (2 * pi * a)).epsilon(1e-14));
    CHECK(kernel_qa(a, a) == doctest::Approx(-std::log(2.0) / (2 * pi)).epsilon(1e-14));
    for (double y : {0.3, 2.0, 17.0}) CHECK(kernel_ka(-y, a) == -kernel_ka(y, a));
  }
  CHECK(std::abs(kernel_qa(1e6, 1.0)) <= 1e-10);
  CHECK_THROWS_AS(kernel_ka(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(kernel_qa(0.0, 1.0), DomainError);
}

TEST_CASE("Q_a' = K_a by central differences") {
  const double h = 1e-5;
  for (double a : {0.1, 1.0, 10.0}) {
    for (double y : {0.1, 0.5, 1.0, 3.0, 10.0}) {
      const double fd = (kernel_qa(y + h, a) - kernel_qa(y - h, a)) / (2 * h);
      CHECK(fd == doctest::Approx(kernel_ka(y, a)).epsilon(1e-6));
    }
  }
}

TEST_CASE("G_a values") {
  for (double a : {0.05, 1.0, 10.0}) {
    for (double x : {1e-3, 0.2, pi / 4, pi / 2}) {
      CHECK(std::abs(kernel_ga(x, 0.0, a)) <= 1e-12);
      CHECK(std::abs(kernel_ga(x, 2 * x, a)) <= 1e-12);
      for (double frac : {0.1, 0.5, 0.9, 1.3, 1.7}) {
        CHECK(kernel_ga(x, frac * x, a) == doctest::Approx(ga_direct(x, frac * x, a)).epsilon(1e-10));
      }
    }
  }
  CHECK(kernel_ga(pi / 4, pi / 4 - 1e-6, 1.0) < -1.0);
  CHECK_THROWS_AS(kernel_ga(pi / 4, pi / 4, 1.0), DomainError);
  CHECK_THROWS(kernel_ga(2.0, 1.0, 1.0));
  CHECK_THROWS(kernel_ga(1.0, 2.5, 1.0));
}

TEST_CASE("G_a shape") {
  struct Case { double x, a; };
  for (auto [x, a] : {Case{pi / 4, 1.0}, Case{pi / 2, 0.1}, Case{pi / 2, 10.0}}) {
    for (const auto& c : verify_ga_shape(x, a, 1000)) {
      CAPTURE(c.name);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("crossing point") {
  CHECK(crossing_point(1.5) == doctest::Approx(2.4 * pi).epsilon(1e-14));
  CHECK(crossing_point(1.5) == doctest::Approx(7.539822).epsilon(1e-7));
  CHECK(crossing_point(1.1) == doctest::Approx(2.2 * pi / 0.21).epsilon(1e-13));
  for (double q = 1.01; q < 2.0; q += 0.07) {
    const double xs = crossing_point(q);
    CHECK(xs > pi / 2);
    CHECK(xs < 2 * pi / (q - 1));
    for (double a : {0.05, 1.0, 10.0}) CHECK(std::abs(ga_crossing_difference(xs, q, a)) <= 1e-10);
  }
  CHECK_THROWS_AS(crossing_point(2.5), ParameterError);
  CHECK_THROWS_AS(crossing_point(1.0), ParameterError);
}

TEST_CASE("crossing difference agrees with G_a") {
  for (double a : {0.05, 1.0}) {
    for (double q : {1.1, 1.5, 1.9}) {
      for (double x : {0.1, 0.7, pi / 2}) {
        const double direct = detail::kernel_ga_unchecked(x, q * x, a) - detail::kernel_ga_unchecked(x, x / q, a);
        CHECK(ga_crossing_difference(x, q, a) == doctest::Approx(direct).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("q claims") {
  struct Case { double a, q; };
  for (auto [a, q] : {Case{1.0, 1.5}, Case{0.05, 1.5}, Case{1.0, 1.9}, Case{10.0, 1.1}}) {
    for (const auto& c : verify_ga_q_claims(a, q, 1000)) {
      CAPTURE(a);
      CAPTURE(q);
      CAPTURE(c.name);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("standard family is in the class") {
  for (const auto& f : standard_blowup_family()) {
    CAPTURE(f.name);
    CHECK(in_blowup_class(f));
    CHECK(in_blowup_class(scaled(f, 3.0)));
  }
  ClassFunction sine{"sin", [](double x) { return std::sin(x); }, [](double x) { return std::cos(x); }};
  CHECK_FALSE(in_blowup_class(sine));
}

TEST_CASE("boundary inequality") {
  const auto f = one_minus_cos();
  for (double x : {pi / 4, pi / 2}) {
    const auto r = check_lemma44(f, 1.0, x);
    CHECK(r.holds);
    CHECK(r.lhs <= r.rhs);
  }
  const auto z = check_lemma44(zero_function(), 1.0, pi / 3);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  CHECK(z.holds);
  ClassFunction sine{"sin", [](double x) { return std::sin(x); }, [](double x) { return std::cos(x); }};
  CHECK_THROWS_AS(check_lemma44(sine, 1.0, 0.5), PreconditionError);
}

TEST_CASE("key constant") {
  const auto family = standard_blowup_family();
  CHECK(estimate_key_constant(1.0, 1.5, {family.front()}) > 0.0);
  CHECK(estimate_key_constant(1.0, 1.5, family) > 0.0);
  const auto base = key_inequality_sides(family.front(), 1.0, 1.5);
  const auto twice = key_inequality_sides(scaled(family.front(), 2.0), 1.0, 1.5);
  CHECK(twice.lhs / twice.rhs == doctest::Approx(base.lhs / base.rhs).epsilon(1e-10));
  CHECK(twice.rhs == doctest::Approx(4 * base.rhs).epsilon(1e-12));
}

TEST_CASE("kernel suite") {
  for (double a : {0.05, 1.0, 10.0}) {
    for (double q : {1.1, 1.5, 1.9, 1.999}) {
      const auto report = run_kernel_suite(a, q, 1.5);
      for (const auto& c : report.checks) {
        CAPTURE(a);
        CAPTURE(q);
        CAPTURE(c.name);
        CHECK(c.passed);
      }
      CHECK(report.all_passed());
    }
  }
  CHECK_THROWS_AS(run_kernel_suite(1.0, 2.5, 1.5), ParameterError);
}
