/*
 * ipm1d: pseudo-spectral simulator and verification toolkit for the 1D
 * boundary transport model  rho_t + u rho_x = 0,  u = g H_a rho  on the circle.
 *
 * Plain C interface. Objects are opaque handles released with the matching
 * *_free function. Every call returns an ipm1d_status; on failure the
 * calling thread's last error message is available from ipm1d_last_error().
 */
#ifndef IPM1D_IPM1D_H
#define IPM1D_IPM1D_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(IPM1D_BUILDING_LIBRARY)
#    define IPM1D_API __declspec(dllexport)
#  else
#    define IPM1D_API __declspec(dllimport)
#  endif
#else
#  define IPM1D_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ipm1d_status {
  IPM1D_OK = 0,
  IPM1D_ERR_CONFIG = 1,       /* invalid configuration value or document */
  IPM1D_ERR_PARAMETER = 2,    /* argument outside its admissible range */
  IPM1D_ERR_DOMAIN = 3,       /* evaluation at a kernel singularity */
  IPM1D_ERR_NUMERIC = 4,      /* non-finite values */
  IPM1D_ERR_PRECONDITION = 5, /* e.g. field outside the blow-up class */
  IPM1D_ERR_IO = 6,
  IPM1D_ERR_NULL = 7,         /* required pointer argument was NULL */
  IPM1D_ERR_INTERNAL = 8
} ipm1d_status;

IPM1D_API const char* ipm1d_version(void);
/* Message for the most recent failure on this thread; "" if none. */
IPM1D_API const char* ipm1d_last_error(void);
IPM1D_API const char* ipm1d_status_name(ipm1d_status status);

/* ---- Configuration ------------------------------------------------------ */

typedef struct ipm1d_config ipm1d_config;

/* All defaults, profile "one-minus-cos". */
IPM1D_API ipm1d_status ipm1d_config_new(ipm1d_config** out);
/* Parses a flat JSON object; unknown keys and bad values are rejected. */
IPM1D_API ipm1d_status ipm1d_config_parse(const char* text, ipm1d_config** out);
IPM1D_API ipm1d_status ipm1d_config_load(const char* path, ipm1d_config** out);
IPM1D_API void ipm1d_config_free(ipm1d_config* cfg);

/* Override one key; the whole document is revalidated and left unchanged
 * on failure. */
IPM1D_API ipm1d_status ipm1d_config_set_number(ipm1d_config* cfg, const char* key, double value);
IPM1D_API ipm1d_status ipm1d_config_set_string(ipm1d_config* cfg, const char* key, const char* value);
/* Replaces the config's output directory by $IPM1D_OUTPUT_DIR when set. */
IPM1D_API ipm1d_status ipm1d_config_apply_environment(ipm1d_config* cfg);
IPM1D_API ipm1d_status ipm1d_config_get_number(const ipm1d_config* cfg, const char* key, double* out);
/* Writes the effective document as JSON into buf (NUL-terminated, truncated
 * to size); *needed receives the full length without the terminator. */
IPM1D_API ipm1d_status ipm1d_config_to_json(const ipm1d_config* cfg, char* buf, size_t size,
                                            size_t* needed);

/* ---- Commands ----------------------------------------------------------- */

/* Receives one line of human-readable output at a time. */
typedef void (*ipm1d_line_sink)(const char* line, void* user);

/* *exit_code follows the command contract: 0 success, 1 validation, IO or
 * failed check, 2 numerical failure. The return value is IPM1D_OK whenever
 * the command itself ran. */
IPM1D_API ipm1d_status ipm1d_simulate(const ipm1d_config* cfg, ipm1d_line_sink sink, void* user,
                                      int* exit_code);
IPM1D_API ipm1d_status ipm1d_operator_check(const double* a_values, size_t count, size_t n,
                                            ipm1d_line_sink sink, void* user, int* exit_code);
IPM1D_API ipm1d_status ipm1d_kernel_check(const double* a_values, size_t count, double q,
                                          double sigma, ipm1d_line_sink sink, void* user,
                                          int* exit_code);
/* NULL / zero-length lists keep the config's value. */
IPM1D_API ipm1d_status ipm1d_sweep(const ipm1d_config* cfg, const double* a_values, size_t a_count,
                                   const double* g_values, size_t g_count, const size_t* n_values,
                                   size_t n_count, ipm1d_line_sink sink, void* user, int* exit_code);

/* ---- Fields and diagnostics --------------------------------------------- */

typedef struct ipm1d_field ipm1d_field;

/* Samples at x_j = -pi + 2 pi j / n, n even and >= 8. */
IPM1D_API ipm1d_status ipm1d_field_from_values(const double* values, size_t n, ipm1d_field** out);
/* The initial data selected by a config. */
IPM1D_API ipm1d_status ipm1d_field_from_config(const ipm1d_config* cfg, ipm1d_field** out);
IPM1D_API void ipm1d_field_free(ipm1d_field* field);
IPM1D_API size_t ipm1d_field_size(const ipm1d_field* field);
/* Copies min(size, n) samples. */
IPM1D_API ipm1d_status ipm1d_field_values(const ipm1d_field* field, double* out, size_t size);

IPM1D_API ipm1d_status ipm1d_apply_ha(const ipm1d_field* field, double a, ipm1d_field** out);
IPM1D_API ipm1d_status ipm1d_check_blowup_class(const ipm1d_field* field, double tol, int* out);
IPM1D_API ipm1d_status ipm1d_compute_j(const ipm1d_field* field, double delta, double* out);

/* ---- Kernels ------------------------------------------------------------ */

IPM1D_API ipm1d_status ipm1d_kernel_ka(double y, double a, double* out);
IPM1D_API ipm1d_status ipm1d_kernel_qa(double y, double a, double* out);
IPM1D_API ipm1d_status ipm1d_kernel_ga(double x, double y, double a, double* out);
IPM1D_API ipm1d_status ipm1d_crossing_point(double q, double* out);

#ifdef __cplusplus
}
#endif

#endif /* IPM1D_IPM1D_H */
