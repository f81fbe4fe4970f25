#include "io/snapshot.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "core/error.hpp"

namespace ipm1d::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw IoError("malformed number \"" + std::string(text) + "\"");
  }
  return v;
}

void write_snapshot(std::ostream& out, const SimState& state) {
  const auto& f = state.field;
  const auto& grid = f.grid();
  out << kSnapshotHeader << '\n'
      << "n " << grid.size() << '\n'
      << "t " << format_double(state.t) << '\n'
      << "bkm " << format_double(state.bkm) << '\n'
      << "values\n";
  for (std::size_t j = 0; j < grid.size(); ++j) {
    out << j << ' ' << format_double(grid.point(j)) << ' ' << format_double(f.value(j)) << '\n';
  }
  out << "spectrum\n";
  for (int k : grid.wavenumbers()) {
    const Complex c = f.coefficient(k);
    out << k << ' ' << format_double(c.real()) << ' ' << format_double(c.imag()) << '\n';
  }
}

void write_snapshot(const std::string& path, const SimState& state) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write snapshot " + path);
  write_snapshot(out, state);
  if (!out) throw IoError("failed writing snapshot " + path);
}

namespace {

std::string expect_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) throw IoError(std::string("snapshot truncated before ") + what);
  return line;
}

double keyed_value(std::istream& in, const std::string& key) {
  const auto line = expect_line(in, key.c_str());
  if (line.rfind(key + ' ', 0) != 0) throw IoError("snapshot: expected \"" + key + "\"");
  return parse_double(std::string_view(line).substr(key.size() + 1));
}

}  // namespace

SimState read_snapshot(std::istream& in) {
  if (expect_line(in, "header") != kSnapshotHeader) {
    throw IoError("not an ipm1d snapshot (or unsupported version)");
  }
  const double n_value = keyed_value(in, "n");
  if (!(n_value >= 8 && n_value == std::floor(n_value) && n_value < 1e9)) {
    throw IoError("snapshot: bad grid size");
  }
  const auto n = static_cast<std::size_t>(n_value);
  const double t = keyed_value(in, "t");
  const double bkm = keyed_value(in, "bkm");
  if (expect_line(in, "values") != "values") throw IoError("snapshot: expected \"values\"");

  std::vector<double> values(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::istringstream row(expect_line(in, "values"));
    std::size_t index = 0;
    std::string x, v;
    if (!(row >> index >> x >> v) || index != j) throw IoError("snapshot: malformed value row");
    values[j] = parse_double(v);
  }
  try {
    return SimState{PeriodicField::from_values(make_grid(n), std::move(values)), t, bkm};
  } catch (const ConfigError& e) {
    throw IoError(std::string("snapshot: ") + e.what());
  }
}

SimState read_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open snapshot " + path);
  return read_snapshot(in);
}

}  // namespace ipm1d::io
