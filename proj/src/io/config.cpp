#include "io/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "core/error.hpp"

namespace ipm1d::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& why) {
  throw ConfigError("config key \"" + key + "\": " + why);
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) fail(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "must be finite");
  return x;
}

long long integer(const json& v, const std::string& key) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9.0e15) return static_cast<long long>(x);
  }
  fail(key, "expected an integer");
}

std::string string(const json& v, const std::string& key) {
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

std::vector<FourierTerm> terms(const json& v) {
  const std::string key = "coefficients";
  if (!v.is_array() || v.empty()) fail(key, "expected a nonempty array of [k, re, im]");
  std::vector<FourierTerm> out;
  for (const auto& e : v) {
    if (!e.is_array() || e.size() != 3) fail(key, "each entry must be [k, re, im]");
    out.push_back({static_cast<int>(integer(e[0], key)), number(e[1], key), number(e[2], key)});
  }
  return out;
}

const std::set<std::string> kProfiles{"one-minus-cos", "one-minus-cos-squared"};

std::vector<Complex> assemble_spectrum(const PeriodicGrid& grid, const std::vector<FourierTerm>& terms) {
  std::vector<Complex> spec(grid.size());
  std::vector<bool> seen(grid.size(), false);
  for (const auto& t : terms) {
    if (t.k <= -grid.nyquist() || t.k > grid.nyquist()) {
      fail("coefficients", "mode " + std::to_string(t.k) + " is not representable at n = " +
                               std::to_string(grid.size()));
    }
    const std::size_t i = grid.index_of(t.k);
    if (seen[i]) fail("coefficients", "mode " + std::to_string(t.k) + " appears twice");
    seen[i] = true;
    spec[i] = {t.re, t.im};
  }
  return spec;
}

}  // namespace

RunConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  auto& sc = cfg.solver;
  for (const auto& [key, v] : doc.items()) {
    if (key == "n") {
      const long long n = integer(v, key);
      if (n < 8 || n % 2 != 0) fail(key, "must be an even integer >= 8");
      sc.n = static_cast<std::size_t>(n);
    } else if (key == "a") {
      sc.a = number(v, key);
      if (!(sc.a > 0.0)) fail(key, "must be positive");
    } else if (key == "g") {
      sc.g = number(v, key);
      if (!(sc.g > 0.0)) fail(key, "must be positive");
    } else if (key == "cfl") {
      sc.cfl = number(v, key);
      if (!(sc.cfl > 0.0 && sc.cfl <= 1.0)) fail(key, "must lie in (0, 1]");
    } else if (key == "t_end") {
      sc.t_end = number(v, key);
      if (!(sc.t_end >= 0.0)) fail(key, "must be nonnegative");
    } else if (key == "slope_stop") {
      sc.slope_stop = number(v, key);
      if (!(sc.slope_stop > 0.0)) fail(key, "must be positive");
    } else if (key == "tail_stop") {
      sc.tail_stop = number(v, key);
      if (!(sc.tail_stop > 0.0 && sc.tail_stop < 1.0)) fail(key, "must lie in (0, 1)");
    } else if (key == "output_every") {
      sc.output_every = number(v, key);
      if (!(sc.output_every > 0.0)) fail(key, "must be positive");
    } else if (key == "profile") {
      cfg.profile = string(v, key);
      if (!kProfiles.contains(cfg.profile)) {
        fail(key, "unknown profile \"" + cfg.profile + "\" (one-minus-cos, one-minus-cos-squared)");
      }
    } else if (key == "coefficients") {
      cfg.coefficients = terms(v);
    } else if (key == "s") {
      const long long s = integer(v, key);
      if (s < 2 || s > 16) fail(key, "must be an integer in [2, 16]");
      cfg.s = static_cast<int>(s);
    } else if (key == "delta") {
      cfg.delta = number(v, key);
      if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) fail(key, "must lie in (0, 1)");
    } else if (key == "q") {
      cfg.q = number(v, key);
      if (!(cfg.q > 1.0 && cfg.q < 2.0)) fail(key, "must lie in (1, 2)");
    } else if (key == "sigma") {
      cfg.sigma = number(v, key);
      if (!(cfg.sigma > 0.0)) fail(key, "must be positive");
    } else if (key == "output_dir") {
      cfg.output_dir = string(v, key);
      if (cfg.output_dir.empty()) fail(key, "must not be empty");
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) fail(key, "expected a nonnegative integer");
      cfg.seed = v.get<std::uint64_t>();
    } else {
      fail(key, "unknown key");
    }
  }
  if (doc.contains("profile") && doc.contains("coefficients")) {
    fail("coefficients", "give either \"profile\" or \"coefficients\", not both");
  }
  if (!cfg.coefficients.empty()) {
    try {
      const auto grid = make_grid(sc.n);
      (void)PeriodicField::from_spectrum(grid, assemble_spectrum(grid, cfg.coefficients));
    } catch (const ParameterError& e) {
      fail("coefficients", e.what());
    }
  }
  return cfg;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(doc);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

json config_to_json(const RunConfig& cfg) {
  const auto& sc = cfg.solver;
  json doc{{"n", sc.n},           {"a", sc.a},
           {"g", sc.g},           {"cfl", sc.cfl},
           {"t_end", sc.t_end},   {"slope_stop", sc.slope_stop},
           {"tail_stop", sc.tail_stop}, {"output_every", sc.output_every},
           {"s", cfg.s},          {"delta", cfg.delta},
           {"q", cfg.q},          {"sigma", cfg.sigma},
           {"output_dir", cfg.output_dir}, {"seed", cfg.seed}};
  if (cfg.coefficients.empty()) {
    doc["profile"] = cfg.profile;
  } else {
    json list = json::array();
    for (const auto& t : cfg.coefficients) list.push_back({t.k, t.re, t.im});
    doc["coefficients"] = list;
  }
  return doc;
}

void apply_environment(RunConfig& cfg) {
  if (const char* dir = std::getenv("IPM1D_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
    cfg.output_dir = dir;
  }
}

PeriodicField initial_field(const RunConfig& cfg) {
  const auto grid = make_grid(cfg.solver.n);
  if (!cfg.coefficients.empty()) {
    return PeriodicField::from_spectrum(grid, assemble_spectrum(grid, cfg.coefficients));
  }
  if (cfg.profile == "one-minus-cos-squared") {
    return PeriodicField::from_function(grid, [](double x) {
      const double v = 1.0 - std::cos(x);
      return v * v;
    });
  }
  return PeriodicField::from_function(grid, [](double x) { return 1.0 - std::cos(x); });
}

}  // namespace ipm1d::io
