#pragma once
// Run configuration: a flat JSON object with number, string and array
// values. Every key is optional; unknown keys are rejected.
//
//   n, a, g, cfl, t_end, slope_stop, tail_stop, output_every   solver
//   profile        "one-minus-cos" | "one-minus-cos-squared"
//   coefficients   [[k, re, im], ...]  (replaces profile; must be conjugate symmetric)
//   s, delta       diagnostics (H^s index, J exponent)
//   q, sigma       kernel-check parameters
//   output_dir     string; IPM1D_OUTPUT_DIR overrides it
//   seed           unsigned, randomized test data only

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "core/diagnostics.hpp"
#include "core/grid_spectral.hpp"
#include "core/solver.hpp"

namespace ipm1d::io {

struct FourierTerm {
  int k = 0;
  double re = 0.0;
  double im = 0.0;
};

struct RunConfig {
  SolverConfig solver;
  std::string profile = "one-minus-cos";
  std::vector<FourierTerm> coefficients;  // nonempty overrides profile
  int s = 3;
  double delta = 0.5;
  double q = 1.5;
  double sigma = 1.5;
  std::string output_dir = "ipm1d_out";
  std::uint64_t seed = 20240917;

  DiagnosticsOptions diagnostics() const { return DiagnosticsOptions{s, delta}; }
};

/// Throws ConfigError naming the offending key.
RunConfig config_from_json(const nlohmann::json& doc);
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Inverse of config_from_json; round-trips.
nlohmann::json config_to_json(const RunConfig& cfg);

/// Applies IPM1D_OUTPUT_DIR when set and nonempty.
void apply_environment(RunConfig& cfg);

PeriodicField initial_field(const RunConfig& cfg);

}  // namespace ipm1d::io
