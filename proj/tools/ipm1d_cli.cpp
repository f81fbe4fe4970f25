// Command-line front end. Talks to the library through the C API only.
//
//   ipm1d simulate       [--config FILE] [overrides]
//   ipm1d operator-check [--config FILE] [--a-list 0.1,1,10] [--n 256]
//   ipm1d kernel-check   [--config FILE] [--a-list 0.05,1,10] [--q Q] [--sigma S]
//   ipm1d sweep          [--config FILE] [--a-list ..] [--g-list ..] [--n-list ..] [overrides]
//
// Precedence: built-in defaults < config file < IPM1D_OUTPUT_DIR < flags.

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ipm1d/ipm1d.h"

namespace {

struct ConfigDeleter {
  void operator()(ipm1d_config* c) const { ipm1d_config_free(c); }
};
using ConfigPtr = std::unique_ptr<ipm1d_config, ConfigDeleter>;

void print_line(const char* line, void*) { std::printf("%s\n", line); }

int report(ipm1d_status st) {
  std::fprintf(stderr, "error: %s: %s\n", ipm1d_status_name(st), ipm1d_last_error());
  return st == IPM1D_ERR_NUMERIC ? 2 : 1;
}

// Flags shared by simulate and sweep; unset ones leave the config alone.
struct Overrides {
  std::optional<double> n, a, g, cfl, t_end, slope_stop, tail_stop, output_every, s, delta;
  std::optional<std::string> profile, output_dir;

  void attach(CLI::App* app) {
    app->add_option("--n", n, "grid size (even, >= 8)");
    app->add_option("--a", a, "interpolation parameter a > 0");
    app->add_option("--g", g, "gravity g > 0");
    app->add_option("--cfl", cfl, "CFL number in (0, 1]");
    app->add_option("--t-end", t_end, "final time");
    app->add_option("--slope-stop", slope_stop, "stop when max |rho_x| reaches this");
    app->add_option("--tail-stop", tail_stop, "stop when the spectral tail fraction reaches this");
    app->add_option("--output-every", output_every, "output interval");
    app->add_option("--s", s, "Sobolev index for the H^s diagnostic");
    app->add_option("--delta", delta, "exponent of the boundary functional J");
    app->add_option("--profile", profile, "one-minus-cos | one-minus-cos-squared");
    app->add_option("--output-dir", output_dir, "output directory");
  }

  ipm1d_status apply(ipm1d_config* cfg) const {
    const std::pair<const char*, const std::optional<double>*> numbers[] = {
        {"n", &n},       {"a", &a},         {"g", &g},
        {"cfl", &cfl},   {"t_end", &t_end}, {"slope_stop", &slope_stop},
        {"tail_stop", &tail_stop}, {"output_every", &output_every},
        {"s", &s},       {"delta", &delta}};
    for (const auto& [key, value] : numbers) {
      if (*value) {
        if (auto st = ipm1d_config_set_number(cfg, key, **value); st != IPM1D_OK) return st;
      }
    }
    if (profile) {
      if (auto st = ipm1d_config_set_string(cfg, "profile", profile->c_str()); st != IPM1D_OK) return st;
    }
    if (output_dir) {
      if (auto st = ipm1d_config_set_string(cfg, "output_dir", output_dir->c_str()); st != IPM1D_OK) {
        return st;
      }
    }
    return IPM1D_OK;
  }
};

// Loads --config (or defaults), then the environment, then flag overrides.
ipm1d_status build_config(const std::string& path, const Overrides* flags, ConfigPtr& out) {
  ipm1d_config* raw = nullptr;
  const auto st = path.empty() ? ipm1d_config_new(&raw) : ipm1d_config_load(path.c_str(), &raw);
  if (st != IPM1D_OK) return st;
  out.reset(raw);
  if (auto e = ipm1d_config_apply_environment(raw); e != IPM1D_OK) return e;
  return flags != nullptr ? flags->apply(raw) : IPM1D_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ipm1d: simulator and verification toolkit for the 1D IPM boundary model"};
  app.set_version_flag("--version", std::string(ipm1d_version()));
  app.require_subcommand(1);

  std::string config_path;

  auto* simulate = app.add_subcommand("simulate", "run one simulation and write its outputs");
  Overrides sim_flags;
  simulate->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  sim_flags.attach(simulate);

  auto* opcheck = app.add_subcommand("operator-check", "verify the multiplier operators");
  std::vector<double> op_a{0.1, 1.0, 10.0};
  std::size_t op_n = 256;
  opcheck->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  opcheck->add_option("--a-list", op_a, "values of a")->delimiter(',');
  opcheck->add_option("--n", op_n, "grid size");

  auto* kcheck = app.add_subcommand("kernel-check", "verify the kernel inequalities");
  std::vector<double> k_a{0.05, 1.0, 10.0};
  std::optional<double> k_q, k_sigma;
  kcheck->add_option("--config", config_path, "JSON config file (q, sigma)")->check(CLI::ExistingFile);
  kcheck->add_option("--a-list", k_a, "values of a")->delimiter(',');
  kcheck->add_option("--q", k_q, "q in (1, 2)");
  kcheck->add_option("--sigma", k_sigma, "weight exponent sigma > 0");

  auto* sweep = app.add_subcommand("sweep", "run a parameter grid concurrently");
  Overrides sweep_flags;
  std::vector<double> sw_a, sw_g;
  std::vector<std::size_t> sw_n;
  sweep->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  sweep->add_option("--a-list", sw_a, "values of a")->delimiter(',');
  sweep->add_option("--g-list", sw_g, "values of g")->delimiter(',');
  sweep->add_option("--n-list", sw_n, "grid sizes")->delimiter(',');
  sweep_flags.attach(sweep);

  CLI11_PARSE(app, argc, argv);

  ConfigPtr cfg;
  int exit_code = 0;
  ipm1d_status st = IPM1D_OK;

  if (*simulate) {
    if ((st = build_config(config_path, &sim_flags, cfg)) != IPM1D_OK) return report(st);
    st = ipm1d_simulate(cfg.get(), print_line, nullptr, &exit_code);
  } else if (*opcheck) {
    if ((st = build_config(config_path, nullptr, cfg)) != IPM1D_OK) return report(st);
    st = ipm1d_operator_check(op_a.data(), op_a.size(), op_n, print_line, nullptr, &exit_code);
  } else if (*kcheck) {
    if ((st = build_config(config_path, nullptr, cfg)) != IPM1D_OK) return report(st);
    // q and sigma from flags go straight to the suite, which owns their validation.
    double q = 0.0, sigma = 0.0;
    ipm1d_config_get_number(cfg.get(), "q", &q);
    ipm1d_config_get_number(cfg.get(), "sigma", &sigma);
    if (k_q) q = *k_q;
    if (k_sigma) sigma = *k_sigma;
    st = ipm1d_kernel_check(k_a.data(), k_a.size(), q, sigma, print_line, nullptr, &exit_code);
  } else if (*sweep) {
    if ((st = build_config(config_path, &sweep_flags, cfg)) != IPM1D_OK) return report(st);
    st = ipm1d_sweep(cfg.get(), sw_a.data(), sw_a.size(), sw_g.data(), sw_g.size(), sw_n.data(), sw_n.size(),
                     print_line, nullptr, &exit_code);
  }
  if (st != IPM1D_OK) return report(st);
  return exit_code;
}
