#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "core/error.hpp"
#include "core/operators.hpp"
#include "core/solver.hpp"

using namespace ipm1d;
using std::numbers::pi;

namespace {

PeriodicField reflect(const PeriodicField& f) {
  const std::size_t n = f.size();
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = f.value((n - j) % n);
  return PeriodicField::from_values(f.grid(), std::move(v));
}

PeriodicField omc(std::size_t n) {
  return PeriodicField::from_function(make_grid(n), [](double x) { return 1 - std::cos(x); });
}

SolverConfig small_config(std::size_t n) {
  SolverConfig cfg;
  cfg.n = n;
  return cfg;
}

bool bitwise_equal(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("config validation names the field") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.a = -1;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("\"a\""), ConfigError);
  cfg = {};
  cfg.cfl = 1.5;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("\"cfl\""), ConfigError);
  cfg = {};
  cfg.n = 30 + 1;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("\"n\""), ConfigError);
}

TEST_CASE("stop reasons round trip") {
  for (auto r : {StopReason::time_reached, StopReason::slope_threshold, StopReason::resolution_lost,
                 StopReason::nonfinite_value}) {
    CHECK(stop_reason_from_string(to_string(r)) == r);
  }
  CHECK_THROWS_AS(stop_reason_from_string("bogus"), ParameterError);
}

TEST_CASE("tendency") {
  const auto cfg = small_config(64);
  const auto grid = make_grid(64);
  CHECK(max_abs(rhs(SimState{PeriodicField::constant(grid, 3.0)}, cfg)) <= 1e-15);

  const auto even = PeriodicField::from_function(grid, [](double x) { return std::cos(x) + 0.4 * std::cos(3 * x); });
  const auto t = rhs(SimState{even}, cfg);
  CHECK(max_abs(t - reflect(t)) <= 1e-14);

  const auto f = omc(64);
  CHECK(std::abs(rhs(SimState{f}, cfg).value(grid.origin_index())) <= 1e-10);

  // For 1 - cos x: u = -(1 - e^{-1}) sin x, so the tendency is (1 - e^{-1}) sin^2 x.
  const double m1 = -std::expm1(-1.0);
  const auto exact = PeriodicField::from_function(grid, [&](double x) { return m1 * std::sin(x) * std::sin(x); });
  CHECK(max_abs(rhs(SimState{f}, cfg) - exact) <= 1e-14);
}

TEST_CASE("CFL step") {
  auto cfg = small_config(128);
  const auto grid = make_grid(128);
  CHECK(cfl_dt(SimState{PeriodicField::constant(grid, 1.0)}, cfg) == cfg.output_every);

  cfg.output_every = 10.0;
  const SimState s{omc(128)};
  const double dt1 = cfl_dt(s, cfg);
  cfg.g = 2.0;
  CHECK(cfl_dt(s, cfg) == doctest::Approx(dt1 / 2).epsilon(1e-14));
  cfg.g = 1.0;

  auto fine = cfg;
  fine.n = 256;
  CHECK(cfl_dt(SimState{omc(256)}, fine) == doctest::Approx(dt1 / 2).epsilon(1e-3));
}

TEST_CASE("RK4 step basics") {
  const auto cfg = small_config(64);
  const auto grid = make_grid(64);
  const SimState c{PeriodicField::constant(grid, 0.7), 0.25, 0.0};
  const auto next = step_rk4(c, 0.1, cfg);
  CHECK(next.t == doctest::Approx(0.35));
  CHECK(bitwise_equal(next.field.values(), c.field.values()));
  CHECK(next.bkm == 0.0);
  CHECK_THROWS_AS(step_rk4(c, 0.0, cfg), ParameterError);
  CHECK_THROWS_AS(step_rk4(c, -1.0, cfg), ParameterError);
}

TEST_CASE("reflection equivariance") {
  const auto cfg = small_config(64);
  const auto grid = make_grid(64);
  const auto f = PeriodicField::from_function(grid, [](double x) { return 1 + 0.5 * std::sin(x) + 0.2 * std::cos(2 * x) - 0.1 * std::sin(3 * x); });
  const auto a = step_rk4(SimState{reflect(f)}, 0.05, cfg).field;
  const auto b = reflect(step_rk4(SimState{f}, 0.05, cfg).field);
  CHECK(max_abs(a - b) <= 1e-14);
}

TEST_CASE("RK4 is fourth order") {
  const auto cfg = small_config(64);
  const auto grid = make_grid(64);
  const SimState s0{PeriodicField::from_function(grid, [](double x) { return 1 + 0.5 * std::sin(x) + 0.2 * std::cos(2 * x); })};
  auto one_step_error = [&](double dt) {
    SimState ref = s0;
    for (int i = 0; i < 8; ++i) ref = step_rk4(ref, dt / 8, cfg);
    return max_abs(step_rk4(s0, dt, cfg).field - ref.field);
  };
  const double e1 = one_step_error(0.2);
  const double e2 = one_step_error(0.1);
  const double order = std::log2(e1 / e2) - 1;  // local error ~ dt^5
  CAPTURE(e1);
  CAPTURE(e2);
  CHECK(order >= 3.8);
}

TEST_CASE("constant data runs to the end unchanged") {
  auto cfg = small_config(32);
  cfg.t_end = 1.0;
  const auto f = PeriodicField::constant(make_grid(32), 1.25);
  const auto r = run(cfg, f);
  CHECK(r.reason == StopReason::time_reached);
  CHECK(r.trajectory.back().t == 1.0);
  CHECK(bitwise_equal(r.trajectory.back().field.values(), f.values()));
  CHECK(r.trajectory.size() == 21);  // initial plus every 0.05
  for (std::size_t i = 0; i < r.trajectory.size(); ++i) {
    CHECK(r.trajectory[i].t == doctest::Approx(0.05 * i).epsilon(1e-12));
  }
}

TEST_CASE("blow-up profile stops on a proxy, deterministically") {
  auto cfg = small_config(256);
  const auto r1 = run(cfg, omc(256));
  CHECK((r1.reason == StopReason::slope_threshold || r1.reason == StopReason::resolution_lost));
  CHECK(r1.trajectory.back().t < cfg.t_end);
  for (std::size_t i = 1; i < r1.trajectory.size(); ++i) {
    CHECK(r1.trajectory[i].bkm >= r1.trajectory[i - 1].bkm);
    CHECK(r1.trajectory[i].t > r1.trajectory[i - 1].t);
  }
  const auto r2 = run(cfg, omc(256));
  REQUIRE(r2.trajectory.size() == r1.trajectory.size());
  for (std::size_t i = 0; i < r1.trajectory.size(); ++i) {
    CHECK(bitwise_equal(r1.trajectory[i].field.values(), r2.trajectory[i].field.values()));
    CHECK(r1.trajectory[i].bkm == r2.trajectory[i].bkm);
  }
}

TEST_CASE("slope threshold stops the run") {
  auto cfg = small_config(256);
  cfg.slope_stop = 1.5;
  const auto r = run(cfg, omc(256));
  CHECK(r.reason == StopReason::slope_threshold);
  CHECK(r.stop_slope >= 1.5);
  CHECK(max_abs_slope(r.trajectory.back().field).value >= 1.5);
}

TEST_CASE("invalid initial data") {
  const auto grid = make_grid(32);
  std::vector<double> v(32, 1.0);
  v[3] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(run(small_config(32), PeriodicField::from_values(grid, v)), NumericError);
  CHECK_THROWS_AS(run(small_config(64), PeriodicField::constant(grid, 1.0)), ConfigError);
}

TEST_CASE("refinement consistency, n = 512 vs 1024") {
  auto c512 = small_config(512);
  auto c1024 = small_config(1024);
  c512.t_end = c1024.t_end = 1.0;
  const auto a = run(c512, omc(512));
  const auto b = run(c1024, omc(1024));
  REQUIRE(a.trajectory.size() == b.trajectory.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
    REQUIRE(a.trajectory[i].t == b.trajectory[i].t);
    const auto& fa = a.trajectory[i].field;
    const auto& fb = b.trajectory[i].field;
    for (std::size_t j = 0; j < 512; ++j) worst = std::max(worst, std::abs(fa.value(j) - fb.value(2 * j)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("class membership") {
  const auto grid = make_grid(128);
  CHECK(check_blowup_class(omc(128), 1e-12));
  CHECK_FALSE(check_blowup_class(PeriodicField::from_function(grid, [](double x) { return std::sin(x); }), 1e-9));
  CHECK_FALSE(check_blowup_class(PeriodicField::from_function(grid, [](double x) { return 1 + std::cos(x); }), 1e-9));
}
