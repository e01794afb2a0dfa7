/* SPDX-License-Identifier: Apache-2.0 */
#ifndef FDBAND_FDBAND_H
#define FDBAND_FDBAND_H

/*
 * C interface to the fdband functional-data toolkit.
 *
 * Every fallible call returns an fdband_status. On failure the message is
 * available from fdband_last_error() on the same thread until the next call.
 * Objects are opaque handles released with their matching *_free function;
 * strings returned through char** are released with fdband_string_free.
 *
 * Status values double as process exit codes for the command-line tool.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FDBAND_BUILDING_LIBRARY)
#    define FDBAND_API __declspec(dllexport)
#  else
#    define FDBAND_API __declspec(dllimport)
#  endif
#else
#  define FDBAND_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fdband_status {
  FDBAND_OK = 0,
  FDBAND_ERR_ARGUMENT = 1, /* invalid argument or null handle */
  FDBAND_ERR_CONFIG = 2,   /* invalid configuration */
  FDBAND_ERR_INPUT = 3,    /* unreadable or malformed input */
  FDBAND_ERR_NUMERIC = 4,  /* rank-deficient or underdetermined fit */
  FDBAND_ERR_INTERNAL = 5
} fdband_status;

typedef struct fdband_dataset fdband_dataset;
typedef struct fdband_ensemble fdband_ensemble;
typedef struct fdband_band fdband_band;

FDBAND_API const char* fdband_version(void);
FDBAND_API const char* fdband_last_error(void);
FDBAND_API void fdband_string_free(char* s);

/* ---- datasets (canonical CSV: year,day,area) ---------------------------- */

/* region is "arctic" or "antarctic". */
FDBAND_API fdband_status fdband_dataset_load(const char* path, const char* region, fdband_dataset** out);
FDBAND_API fdband_status fdband_dataset_parse(const char* text, size_t length, const char* region,
                                              fdband_dataset** out);
/* JSON: {"coefficients": [...], "year_offsets": [...], "first_year", "noise_sd",
 *        "seed", "pattern": "daily"|"alternate_day", "daily_from_year", "period", "region"} */
FDBAND_API fdband_status fdband_dataset_synthesize(const char* config_json, fdband_dataset** out);
FDBAND_API void fdband_dataset_free(fdband_dataset* dataset);

FDBAND_API size_t fdband_dataset_year_count(const fdband_dataset* dataset);
FDBAND_API fdband_status fdband_dataset_year(const fdband_dataset* dataset, size_t index, int* year,
                                             size_t* sample_count);
/* Copies up to `capacity` samples of one year. */
FDBAND_API fdband_status fdband_dataset_samples(const fdband_dataset* dataset, size_t index, int* days,
                                                double* areas, size_t capacity);
FDBAND_API fdband_status fdband_dataset_write(const fdband_dataset* dataset, const char* path);

/* NSIDC daily export -> canonical CSV file. */
FDBAND_API fdband_status fdband_convert_nsidc(const char* in_path, const char* out_path);

/* ---- smoothing ------------------------------------------------------------ */

FDBAND_API fdband_status fdband_smooth(const fdband_dataset* dataset, int basis_count, double period,
                                       fdband_ensemble** out);
FDBAND_API void fdband_ensemble_free(fdband_ensemble* ensemble);
FDBAND_API size_t fdband_ensemble_size(const fdband_ensemble* ensemble);
FDBAND_API int fdband_ensemble_basis_count(const fdband_ensemble* ensemble);
FDBAND_API fdband_status fdband_ensemble_coefficients(const fdband_ensemble* ensemble, size_t index, int* year,
                                                      double* coefficients, size_t capacity);
/* deriv in {0,1,2}; writes n values. */
FDBAND_API fdband_status fdband_ensemble_evaluate(const fdband_ensemble* ensemble, size_t index, const double* days,
                                                  size_t n, int deriv, double* values);

/* MSE profile over p_values and the flatness-rule selection. mse_hat may be
 * NULL; otherwise it receives n_p values. */
FDBAND_API fdband_status fdband_select_basis(const fdband_dataset* dataset, const int* p_values, size_t n_p,
                                             double period, double flatness_tol, double* mse_hat, int* selected,
                                             int* converged);

/* ---- bootstrap bands -------------------------------------------------------- */

/* Band for the curves of years [first_year, last_year]; parallelism 0 uses
 * all hardware threads. Output is identical for any parallelism. */
FDBAND_API fdband_status fdband_bootstrap_band(const fdband_ensemble* ensemble, int first_year, int last_year,
                                               size_t b_samples, double level, uint64_t seed,
                                               unsigned parallelism, fdband_band** out);
FDBAND_API void fdband_band_free(fdband_band* band);
FDBAND_API size_t fdband_band_size(const fdband_band* band);
FDBAND_API fdband_status fdband_band_values(const fdband_band* band, double* days, double* lower, double* center,
                                            double* upper, size_t capacity);
/* Band CSV (metadata header + day,lower,center,upper). */
FDBAND_API fdband_status fdband_band_csv(const fdband_band* band, char** csv_out);

/* ---- pipeline and figures ---------------------------------------------------- */

/* Runs the full pipeline described by a JSON run configuration. The manifest
 * is returned through manifest_out (may be NULL). */
FDBAND_API fdband_status fdband_run_pipeline(const char* config_json, char** manifest_out);
/* Default run configuration as JSON. */
FDBAND_API fdband_status fdband_default_config(char** config_out);
/* Renders a figure bundle (JSON) as an SVG document. */
FDBAND_API fdband_status fdband_render_svg(const char* bundle_json, char** svg_out);

#ifdef __cplusplus
}
#endif

#endif /* FDBAND_FDBAND_H */
