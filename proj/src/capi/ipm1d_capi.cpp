#include "ipm1d/ipm1d.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "core/diagnostics.hpp"
#include "core/error.hpp"
#include "core/kernel_analysis.hpp"
#include "core/operators.hpp"
#include "io/commands.hpp"
#include "io/config.hpp"

struct ipm1d_config {
  nlohmann::json doc;  // only keys set explicitly
  ipm1d::io::RunConfig cfg;
};

struct ipm1d_field {
  ipm1d::PeriodicField field;
};

namespace {

thread_local std::string last_error;

ipm1d_status status_for(ipm1d::ErrorKind kind) {
  using ipm1d::ErrorKind;
  switch (kind) {
    case ErrorKind::config: return IPM1D_ERR_CONFIG;
    case ErrorKind::parameter: return IPM1D_ERR_PARAMETER;
    case ErrorKind::domain: return IPM1D_ERR_DOMAIN;
    case ErrorKind::numeric: return IPM1D_ERR_NUMERIC;
    case ErrorKind::precondition: return IPM1D_ERR_PRECONDITION;
    case ErrorKind::io: return IPM1D_ERR_IO;
  }
  return IPM1D_ERR_INTERNAL;
}

// Runs body, translating exceptions into a status and the thread's message.
template <class F>
ipm1d_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return IPM1D_OK;
  } catch (const ipm1d::Error& e) {
    last_error = e.what();
    return status_for(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return IPM1D_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return IPM1D_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return IPM1D_ERR_INTERNAL;
  }
}

ipm1d_status null_argument(const char* name) {
  last_error = std::string("argument ") + name + " is NULL";
  return IPM1D_ERR_NULL;
}

ipm1d::io::LineSink make_sink(ipm1d_line_sink sink, void* user) {
  return [sink, user](const std::string& line) {
    if (sink != nullptr) sink(line.c_str(), user);
  };
}

std::vector<double> to_vector(const double* v, std::size_t count) {
  return v == nullptr ? std::vector<double>{} : std::vector<double>(v, v + count);
}

ipm1d_status set_key(ipm1d_config* cfg, const char* key, nlohmann::json value) {
  if (cfg == nullptr) return null_argument("cfg");
  if (key == nullptr) return null_argument("key");
  return guarded([&] {
    auto doc = cfg->doc;
    // profile and coefficients are alternatives; setting one drops the other.
    if (std::strcmp(key, "profile") == 0) doc.erase("coefficients");
    if (std::strcmp(key, "coefficients") == 0) doc.erase("profile");
    doc[key] = std::move(value);
    auto parsed = ipm1d::io::config_from_json(doc);
    parsed.output_dir = doc.contains("output_dir") ? parsed.output_dir : cfg->cfg.output_dir;
    cfg->doc = std::move(doc);
    cfg->cfg = std::move(parsed);
  });
}

ipm1d_status make_config(const nlohmann::json& doc, ipm1d_config** out) {
  return guarded([&] {
    auto parsed = ipm1d::io::config_from_json(doc);
    *out = new ipm1d_config{doc, std::move(parsed)};
  });
}

}  // namespace

extern "C" {

const char* ipm1d_version(void) { return "0.1.0"; }

const char* ipm1d_last_error(void) { return last_error.c_str(); }

const char* ipm1d_status_name(ipm1d_status status) {
  switch (status) {
    case IPM1D_OK: return "ok";
    case IPM1D_ERR_CONFIG: return "config error";
    case IPM1D_ERR_PARAMETER: return "parameter error";
    case IPM1D_ERR_DOMAIN: return "domain error";
    case IPM1D_ERR_NUMERIC: return "numeric error";
    case IPM1D_ERR_PRECONDITION: return "precondition error";
    case IPM1D_ERR_IO: return "io error";
    case IPM1D_ERR_NULL: return "null argument";
    case IPM1D_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

ipm1d_status ipm1d_config_new(ipm1d_config** out) {
  if (out == nullptr) return null_argument("out");
  return make_config(nlohmann::json::object(), out);
}

ipm1d_status ipm1d_config_parse(const char* text, ipm1d_config** out) {
  if (text == nullptr) return null_argument("text");
  if (out == nullptr) return null_argument("out");
  nlohmann::json doc;
  const auto st = guarded([&] {
    (void)ipm1d::io::parse_config(text);  // JSON syntax and schema errors
    doc = nlohmann::json::parse(text);
  });
  return st == IPM1D_OK ? make_config(doc, out) : st;
}

ipm1d_status ipm1d_config_load(const char* path, ipm1d_config** out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  std::string text;
  const auto st = guarded([&] {
    std::ifstream in(path);
    if (!in) throw ipm1d::IoError(std::string("cannot open config file ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  });
  return st == IPM1D_OK ? ipm1d_config_parse(text.c_str(), out) : st;
}

void ipm1d_config_free(ipm1d_config* cfg) { delete cfg; }

ipm1d_status ipm1d_config_set_number(ipm1d_config* cfg, const char* key, double value) {
  // Integral values go in as integers so that integer-typed keys accept them.
  if (value == static_cast<double>(static_cast<long long>(value)) && std::abs(value) < 9.0e15) {
    return set_key(cfg, key, static_cast<long long>(value));
  }
  return set_key(cfg, key, value);
}

ipm1d_status ipm1d_config_set_string(ipm1d_config* cfg, const char* key, const char* value) {
  if (value == nullptr) return null_argument("value");
  return set_key(cfg, key, std::string(value));
}

ipm1d_status ipm1d_config_apply_environment(ipm1d_config* cfg) {
  if (cfg == nullptr) return null_argument("cfg");
  return guarded([&] { ipm1d::io::apply_environment(cfg->cfg); });
}

ipm1d_status ipm1d_config_get_number(const ipm1d_config* cfg, const char* key, double* out) {
  if (cfg == nullptr) return null_argument("cfg");
  if (key == nullptr) return null_argument("key");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const auto doc = ipm1d::io::config_to_json(cfg->cfg);
    if (!doc.contains(key) || !doc[key].is_number()) {
      throw ipm1d::ConfigError(std::string("no numeric config key \"") + key + "\"");
    }
    *out = doc[key].get<double>();
  });
}

ipm1d_status ipm1d_config_to_json(const ipm1d_config* cfg, char* buf, size_t size, size_t* needed) {
  if (cfg == nullptr) return null_argument("cfg");
  return guarded([&] {
    const auto text = ipm1d::io::config_to_json(cfg->cfg).dump(2);
    if (needed != nullptr) *needed = text.size();
    if (buf != nullptr && size > 0) {
      const std::size_t n = std::min(size - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
  });
}

ipm1d_status ipm1d_simulate(const ipm1d_config* cfg, ipm1d_line_sink sink, void* user, int* exit_code) {
  if (cfg == nullptr) return null_argument("cfg");
  if (exit_code == nullptr) return null_argument("exit_code");
  return guarded([&] { *exit_code = ipm1d::io::simulate_cmd(cfg->cfg, make_sink(sink, user)); });
}

ipm1d_status ipm1d_operator_check(const double* a_values, size_t count, size_t n, ipm1d_line_sink sink,
                                  void* user, int* exit_code) {
  if (exit_code == nullptr) return null_argument("exit_code");
  return guarded([&] {
    *exit_code = ipm1d::io::operator_check_cmd(to_vector(a_values, count), n, make_sink(sink, user));
  });
}

ipm1d_status ipm1d_kernel_check(const double* a_values, size_t count, double q, double sigma,
                                ipm1d_line_sink sink, void* user, int* exit_code) {
  if (exit_code == nullptr) return null_argument("exit_code");
  return guarded([&] {
    *exit_code = ipm1d::io::kernel_check_cmd(to_vector(a_values, count), q, sigma, make_sink(sink, user));
  });
}

ipm1d_status ipm1d_sweep(const ipm1d_config* cfg, const double* a_values, size_t a_count,
                         const double* g_values, size_t g_count, const size_t* n_values, size_t n_count,
                         ipm1d_line_sink sink, void* user, int* exit_code) {
  if (cfg == nullptr) return null_argument("cfg");
  if (exit_code == nullptr) return null_argument("exit_code");
  return guarded([&] {
    ipm1d::io::SweepGrid grid;
    grid.a = to_vector(a_values, a_count);
    grid.g = to_vector(g_values, g_count);
    if (n_values != nullptr) grid.n.assign(n_values, n_values + n_count);
    *exit_code = ipm1d::io::sweep_cmd(cfg->cfg, grid, make_sink(sink, user));
  });
}

ipm1d_status ipm1d_field_from_values(const double* values, size_t n, ipm1d_field** out) {
  if (values == nullptr) return null_argument("values");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    auto f = ipm1d::PeriodicField::from_values(ipm1d::make_grid(n), std::vector<double>(values, values + n));
    *out = new ipm1d_field{std::move(f)};
  });
}

ipm1d_status ipm1d_field_from_config(const ipm1d_config* cfg, ipm1d_field** out) {
  if (cfg == nullptr) return null_argument("cfg");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = new ipm1d_field{ipm1d::io::initial_field(cfg->cfg)}; });
}

void ipm1d_field_free(ipm1d_field* field) { delete field; }

size_t ipm1d_field_size(const ipm1d_field* field) { return field == nullptr ? 0 : field->field.size(); }

ipm1d_status ipm1d_field_values(const ipm1d_field* field, double* out, size_t size) {
  if (field == nullptr) return null_argument("field");
  if (out == nullptr) return null_argument("out");
  const auto v = field->field.values();
  std::copy_n(v.begin(), std::min(size, v.size()), out);
  last_error.clear();
  return IPM1D_OK;
}

ipm1d_status ipm1d_apply_ha(const ipm1d_field* field, double a, ipm1d_field** out) {
  if (field == nullptr) return null_argument("field");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = new ipm1d_field{ipm1d::apply_ha_spectral(field->field, a)}; });
}

ipm1d_status ipm1d_check_blowup_class(const ipm1d_field* field, double tol, int* out) {
  if (field == nullptr) return null_argument("field");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    if (!(tol >= 0.0)) throw ipm1d::ParameterError("tolerance must be nonnegative");
    *out = ipm1d::check_blowup_class(field->field, tol) ? 1 : 0;
  });
}

ipm1d_status ipm1d_compute_j(const ipm1d_field* field, double delta, double* out) {
  if (field == nullptr) return null_argument("field");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = ipm1d::compute_j(field->field, delta); });
}

ipm1d_status ipm1d_kernel_ka(double y, double a, double* out) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = ipm1d::kernel_ka(y, a); });
}

ipm1d_status ipm1d_kernel_qa(double y, double a, double* out) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = ipm1d::kernel_qa(y, a); });
}

ipm1d_status ipm1d_kernel_ga(double x, double y, double a, double* out) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = ipm1d::kernel_ga(x, y, a); });
}

ipm1d_status ipm1d_crossing_point(double q, double* out) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = ipm1d::crossing_point(q); });
}

}  // extern "C"
