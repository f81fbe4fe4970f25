#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "core/error.hpp"
#include "io/commands.hpp"
#include "io/config.hpp"
#include "io/csv.hpp"
#include "io/snapshot.hpp"

using namespace ipm1d;
using namespace ipm1d::io;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("ipm1d_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void quiet(const std::string&) {}

}  // namespace

TEST_CASE("config defaults and round trip") {
  const auto cfg = parse_config("{}");
  CHECK(cfg.solver.n == 1024);
  CHECK(cfg.solver.a == 1.0);
  CHECK(cfg.solver.g == 1.0);
  CHECK(cfg.solver.cfl == 0.4);
  CHECK(cfg.solver.t_end == 10.0);
  CHECK(cfg.solver.slope_stop == 1e3);
  CHECK(cfg.solver.tail_stop == 1e-6);
  CHECK(cfg.solver.output_every == 0.05);
  CHECK(cfg.s == 3);
  CHECK(cfg.delta == 0.5);
  CHECK(cfg.profile == "one-minus-cos");

  const auto custom = parse_config(R"({"n": 64, "a": 0.25, "coefficients": [[0, 1, 0], [1, 0.25, 0.5], [-1, 0.25, -0.5]]})");
  const auto again = config_from_json(config_to_json(custom));
  CHECK(config_to_json(again) == config_to_json(custom));
  const auto f = initial_field(custom);
  CHECK(f.coefficient(1).real() == doctest::Approx(0.25));
  CHECK(f.coefficient(1).imag() == doctest::Approx(0.5));
}

TEST_CASE("config errors name the key") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"a": -1})"), doctest::Contains("\"a\""), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"bogus": 1})"), doctest::Contains("\"bogus\""), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"g": "big"})"), doctest::Contains("\"g\""), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"n": 63})"), doctest::Contains("\"n\""), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"n": 64.5})"), doctest::Contains("\"n\""), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"q": 2.5})"), doctest::Contains("\"q\""), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"coefficients": [[1, 1, 0]]})"), doctest::Contains("\"coefficients\""),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"profile": "one-minus-cos", "coefficients": [[0, 1, 0]]})"),
                       doctest::Contains("\"coefficients\""), ConfigError);
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/ipm1d.json"), IoError);
}

TEST_CASE("environment overrides the output directory") {
  auto cfg = parse_config(R"({"output_dir": "from_file"})");
  ::setenv("IPM1D_OUTPUT_DIR", "from_env", 1);
  apply_environment(cfg);
  ::unsetenv("IPM1D_OUTPUT_DIR");
  CHECK(cfg.output_dir == "from_env");
  apply_environment(cfg);
  CHECK(cfg.output_dir == "from_env");
}

TEST_CASE("number formatting round-trips") {
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK(std::isnan(parse_double(format_double(std::nan("")))));
  CHECK(parse_double(format_double(-INFINITY)) == -INFINITY);
  CHECK_THROWS_AS(parse_double("1.5x"), IoError);
}

TEST_CASE("snapshot round trip is bit exact") {
  const auto grid = make_grid(32);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  std::vector<double> v(32);
  for (auto& x : v) x = nd(rng);
  const SimState s{PeriodicField::from_values(grid, v), 0.123456789012345678, 3.14};
  std::stringstream buf;
  write_snapshot(buf, s);
  CHECK(buf.str().rfind(kSnapshotHeader, 0) == 0);
  const auto back = read_snapshot(buf);
  CHECK(back.t == s.t);
  CHECK(back.bkm == s.bkm);
  REQUIRE(back.field.size() == 32);
  for (std::size_t j = 0; j < 32; ++j) CHECK(back.field.value(j) == v[j]);

  std::stringstream bad("# something else\n");
  CHECK_THROWS_AS(read_snapshot(bad), IoError);
}

TEST_CASE("CSV round trip") {
  DiagnosticsRecord r{0.5, 2.0, 3.0, 4.0, 1.0, 5.5, -0.25, 0.75, std::nan(""), 1e-9};
  std::stringstream buf;
  write_csv(buf, {r, r});
  std::string header;
  std::getline(buf, header);
  CHECK(header == kCsvHeader);
  buf.seekg(0);
  const auto rows = read_csv(buf);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].slope_argmax == -0.25);
  CHECK(std::isnan(rows[1].j_value));
  CHECK(rows[1].tail_fraction == 1e-9);
}

TEST_CASE("simulate writes its outputs") {
  TempDir tmp;
  auto cfg = parse_config(R"({"n": 32, "t_end": 0.2, "coefficients": [[0, 1.5, 0]]})");
  cfg.output_dir = (tmp.path / "const").string();
  const auto o = simulate(cfg, quiet);
  CHECK(o.exit_code == 0);
  CHECK(o.reason == "time_reached");
  for (const char* name : {"diagnostics.csv", "initial.snapshot", "final.snapshot", "summary.json", "profiles.svg",
                           "j.svg", "bkm.svg", "slope.svg"}) {
    CHECK(fs::exists(fs::path(cfg.output_dir) / name));
  }
  const auto a = read_snapshot((fs::path(cfg.output_dir) / "initial.snapshot").string());
  const auto b = read_snapshot((fs::path(cfg.output_dir) / "final.snapshot").string());
  CHECK(b.t == 0.2);
  for (std::size_t j = 0; j < 32; ++j) CHECK(a.field.value(j) == b.field.value(j));
  const auto summary = nlohmann::json::parse(slurp(fs::path(cfg.output_dir) / "summary.json"));
  CHECK(summary["reason"] == "time_reached");
  CHECK(summary["config"]["n"] == 32);
}

TEST_CASE("repeated runs give byte-identical diagnostics") {
  TempDir tmp;
  auto cfg = parse_config(R"({"n": 128, "t_end": 0.5})");
  cfg.output_dir = (tmp.path / "one").string();
  CHECK(simulate_cmd(cfg, quiet) == 0);
  cfg.output_dir = (tmp.path / "two").string();
  CHECK(simulate_cmd(cfg, quiet) == 0);
  CHECK(slurp(tmp.path / "one" / "diagnostics.csv") == slurp(tmp.path / "two" / "diagnostics.csv"));
  CHECK(slurp(tmp.path / "one" / "final.snapshot") == slurp(tmp.path / "two" / "final.snapshot"));
}

TEST_CASE("unwritable output directory") {
  TempDir tmp;
  std::ofstream(tmp.path / "file") << "x";
  auto cfg = parse_config(R"({"n": 32, "t_end": 0.1})");
  cfg.output_dir = (tmp.path / "file" / "sub").string();
  std::vector<std::string> lines;
  const auto o = simulate(cfg, [&](const std::string& l) { lines.push_back(l); });
  CHECK(o.exit_code == 1);
  REQUIRE_FALSE(lines.empty());
  CHECK(lines.back().rfind("error:", 0) == 0);
}

TEST_CASE("sweep") {
  TempDir tmp;
  auto cfg = parse_config(R"({"n": 128})");
  cfg.output_dir = tmp.path.string();
  CHECK(sweep_cmd(cfg, {}, quiet) == 1);

  CHECK(sweep_cmd(cfg, {{}, {1.0, 2.0}, {}}, quiet) == 0);
  std::ifstream in(tmp.path / "sweep.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "run,a,g,n,exit_code,reason,stop_time,bkm,c_hat,t_star_bound");
  std::vector<double> stop;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    REQUIRE(cells.size() == 10);
    stop.push_back(parse_double(cells[6]));
  }
  REQUIRE(stop.size() == 2);
  // The equation is invariant under (g, t) -> (2 g, t / 2).
  CHECK(stop[0] / stop[1] == doctest::Approx(2.0).epsilon(0.05));
}
