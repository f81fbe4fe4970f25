#include "io/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>
#include <thread>

#include "core/diagnostics.hpp"
#include "core/error.hpp"
#include "core/kernel_analysis.hpp"
#include "core/operators.hpp"
#include "io/csv.hpp"
#include "io/snapshot.hpp"
#include "io/svg.hpp"

namespace ipm1d::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::numeric ? kExitNumeric : kExitInvalid;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

void prepare_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
  const auto probe = dir / ".ipm1d_write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw IoError("output directory is not writable: " + dir.string());
  }
  fs::remove(probe, ec);
}

void write_plots(const fs::path& dir, const RunResult& result,
                 const std::vector<DiagnosticsRecord>& records) {
  const auto& traj = result.trajectory;
  std::vector<PlotSeries> profiles;
  const std::size_t picks = std::min<std::size_t>(5, traj.size());
  for (std::size_t p = 0; p < picks; ++p) {
    const std::size_t i = picks == 1 ? 0 : p * (traj.size() - 1) / (picks - 1);
    const auto& f = traj[i].field;
    const auto xs = f.grid().points();
    profiles.push_back({"t = " + fmt(traj[i].t, 4), xs, {f.values().begin(), f.values().end()}});
  }
  write_svg((dir / "profiles.svg").string(), {"density profiles", "x", "rho"}, profiles);

  std::vector<double> t, j, bkm, slope;
  for (const auto& r : records) {
    t.push_back(r.t);
    j.push_back(r.j_value);
    bkm.push_back(r.bkm);
    slope.push_back(r.slope_max);
  }
  write_svg((dir / "j.svg").string(), {"boundary functional J", "t", "J"}, {{"J", t, j}});
  write_svg((dir / "bkm.svg").string(), {"accumulated slope integral", "t", "bkm"}, {{"bkm", t, bkm}});
  write_svg((dir / "slope.svg").string(), {"maximum slope", "t", "max |rho_x|", true},
            {{"slope_max", t, slope}});
}

// Compares the centered-difference J' with the value given by the
// equation at the last interior sample of the J series.
json j_prime_check(const RunConfig& cfg, const RunResult& result, const std::vector<JSample>& series) {
  if (series.size() < 3) return nullptr;
  const std::size_t i = series.size() - 2;
  const double h0 = series[i].t - series[i - 1].t;
  const double h1 = series[i + 1].t - series[i].t;
  const double fd = (-h1 / (h0 * (h0 + h1))) * series[i - 1].j + ((h1 - h0) / (h0 * h1)) * series[i].j +
                    (h0 / (h1 * (h0 + h1))) * series[i + 1].j;
  const auto& state = result.trajectory[i];
  try {
    const double exact = j_derivative_identity(state.field, cfg.solver.a, cfg.solver.g, cfg.delta);
    return json{{"t", state.t},
                {"finite_difference", fd},
                {"identity", exact},
                {"relative_difference", finite_or_null(std::abs(fd - exact) / std::abs(exact))}};
  } catch (const Error&) {
    return nullptr;
  }
}

}  // namespace

SimulationOutcome simulate(const RunConfig& cfg, const LineSink& out) {
  SimulationOutcome outcome;
  try {
    const fs::path dir(cfg.output_dir);
    prepare_directory(dir);
    const auto rho0 = initial_field(cfg);
    const auto result = run(cfg.solver, rho0);
    const auto records = make_records(result.trajectory, cfg.diagnostics());
    const auto series = j_series(records);

    write_csv((dir / "diagnostics.csv").string(), records);
    write_snapshot((dir / "initial.snapshot").string(), result.trajectory.front());
    write_snapshot((dir / "final.snapshot").string(), result.trajectory.back());
    write_plots(dir, result, records);

    const auto& last = result.trajectory.back();
    json fit_doc = nullptr;
    if (series.size() >= 8) {
      const auto fit = fit_riccati(series);
      outcome.c_hat = fit.c_hat;
      outcome.t_star_bound = fit.t_star_bound;
      fit_doc = json{{"c_hat", fit.c_hat},
                     {"t_star_bound", finite_or_null(fit.t_star_bound)},
                     {"residual", finite_or_null(fit.residual)},
                     {"conclusive", fit.conclusive},
                     {"samples", fit.samples}};
    }
    outcome.reason = std::string(to_string(result.reason));
    outcome.t_final = last.t;
    outcome.bkm = last.bkm;
    outcome.exit_code = result.reason == StopReason::nonfinite_value ? kExitNumeric : kExitOk;

    const json summary{{"reason", outcome.reason},
                       {"exit_code", outcome.exit_code},
                       {"steps", result.steps},
                       {"t_final", last.t},
                       {"bkm_final", last.bkm},
                       {"slope_final", result.stop_slope},
                       {"tail_fraction_final", result.stop_tail},
                       {"outputs", records.size()},
                       {"j_samples", series.size()},
                       {"riccati", fit_doc},
                       {"j_prime_check", j_prime_check(cfg, result, series)},
                       {"config", config_to_json(cfg)}};
    std::ofstream f(dir / "summary.json");
    if (!f) throw IoError("cannot write summary.json in " + dir.string());
    f << summary.dump(2) << '\n';

    out("reason: " + outcome.reason);
    out("t_final: " + fmt(last.t, 10) + "  steps: " + std::to_string(result.steps));
    out("bkm: " + fmt(last.bkm) + "  slope_max: " + fmt(result.stop_slope) +
        "  tail_fraction: " + fmt(result.stop_tail));
    if (fit_doc.is_null()) {
      out("riccati fit: not enough J samples (" + std::to_string(series.size()) + ")");
    } else {
      out("riccati fit: c_hat = " + fmt(outcome.c_hat) + "  t_star_bound = " + fmt(outcome.t_star_bound));
    }
    out("output: " + dir.string());
  } catch (const Error& e) {
    outcome.exit_code = exit_code_for(e);
    outcome.error = e.what();
    out(std::string("error: ") + e.what());
  }
  return outcome;
}

int simulate_cmd(const RunConfig& cfg, const LineSink& out) { return simulate(cfg, out).exit_code; }

int operator_check_cmd(const std::vector<double>& a_values, std::size_t n, const LineSink& out) {
  try {
    if (a_values.empty()) throw ParameterError("operator-check needs at least one value of a");
    (void)make_grid(n);
    bool ok = true;
    out("a            check                 result  value         tolerance");
    for (double a : a_values) {
      OperatorSuiteOptions opts;
      opts.n = n;
      for (const auto& c : run_operator_suite(a, opts)) {
        ok = ok && c.passed;
        std::ostringstream row;
        row << std::left << std::setw(13) << fmt(a) << std::setw(22) << c.name << std::setw(8)
            << (c.passed ? "PASS" : "FAIL") << std::setw(14) << fmt(c.value, 4) << fmt(c.tolerance, 4);
        if (!c.detail.empty()) row << "  " << c.detail;
        out(row.str());
      }
    }
    return ok ? kExitOk : kExitInvalid;
  } catch (const Error& e) {
    out(std::string("error: ") + e.what());
    return exit_code_for(e);
  }
}

int kernel_check_cmd(const std::vector<double>& a_values, double q, double sigma, const LineSink& out) {
  try {
    if (a_values.empty()) throw ParameterError("kernel-check needs at least one value of a");
    bool ok = true;
    out("a            check                              result  margin        at");
    for (double a : a_values) {
      const auto report = run_kernel_suite(a, q, sigma);
      for (const auto& c : report.checks) {
        ok = ok && c.passed;
        std::ostringstream row;
        row << std::left << std::setw(13) << fmt(a) << std::setw(35) << c.name << std::setw(8)
            << (c.passed ? "PASS" : "FAIL") << std::setw(14) << fmt(c.margin, 4) << fmt(c.location, 6);
        out(row.str());
      }
    }
    return ok ? kExitOk : kExitInvalid;
  } catch (const Error& e) {
    out(std::string("error: ") + e.what());
    return exit_code_for(e);
  }
}

int sweep_cmd(const RunConfig& base, const SweepGrid& grid, const LineSink& out) {
  try {
    if (grid.a.empty() && grid.g.empty() && grid.n.empty()) throw ParameterError("sweep grid is empty");
    const std::vector<double> as = grid.a.empty() ? std::vector<double>{base.solver.a} : grid.a;
    const std::vector<double> gs = grid.g.empty() ? std::vector<double>{base.solver.g} : grid.g;
    const std::vector<std::size_t> ns = grid.n.empty() ? std::vector<std::size_t>{base.solver.n} : grid.n;

    std::vector<RunConfig> runs;
    for (double a : as) {
      for (double g : gs) {
        for (std::size_t n : ns) {
          RunConfig cfg = base;
          cfg.solver.a = a;
          cfg.solver.g = g;
          cfg.solver.n = n;
          std::ostringstream name;
          name << "run_" << std::setw(3) << std::setfill('0') << runs.size() << "_a" << fmt(a) << "_g"
               << fmt(g) << "_n" << n;
          cfg.output_dir = (fs::path(base.output_dir) / name.str()).string();
          cfg.solver.validate();
          runs.push_back(std::move(cfg));
        }
      }
    }
    prepare_directory(base.output_dir);

    // Runs share nothing; each buffers its own log lines.
    std::vector<SimulationOutcome> outcomes(runs.size());
    std::vector<std::vector<std::string>> logs(runs.size());
    const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, runs.size());
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < runs.size(); i += workers) {
          outcomes[i] = simulate(runs[i], [&logs, i](const std::string& line) { logs[i].push_back(line); });
        }
      }));
    }
    for (auto& j : jobs) j.get();

    const auto csv_path = fs::path(base.output_dir) / "sweep.csv";
    std::ofstream csv(csv_path);
    if (!csv) throw IoError("cannot write " + csv_path.string());
    csv << "run,a,g,n,exit_code,reason,stop_time,bkm,c_hat,t_star_bound\n";
    bool all_ok = true;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto& r = runs[i];
      const auto& o = outcomes[i];
      all_ok = all_ok && o.exit_code == kExitOk;
      csv << fs::path(r.output_dir).filename().string() << ',' << format_double(r.solver.a) << ','
          << format_double(r.solver.g) << ',' << r.solver.n << ',' << o.exit_code << ','
          << (o.reason.empty() ? "error" : o.reason) << ',' << format_double(o.t_final) << ','
          << format_double(o.bkm) << ',' << format_double(o.c_hat) << ',' << format_double(o.t_star_bound)
          << '\n';
      out("[" + fs::path(r.output_dir).filename().string() + "] exit " + std::to_string(o.exit_code) +
          (o.reason.empty() ? "  " + o.error : "  " + o.reason + " at t = " + fmt(o.t_final, 8)));
    }
    out("summary: " + csv_path.string());
    return all_ok ? kExitOk : kExitInvalid;
  } catch (const Error& e) {
    out(std::string("error: ") + e.what());
    return exit_code_for(e);
  }
}

}  // namespace ipm1d::io
