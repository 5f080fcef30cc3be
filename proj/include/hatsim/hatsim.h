/* SPDX-License-Identifier: Apache-2.0 */
/* Copyright 2026 The hatsim Authors */
#ifndef HATSIM_HATSIM_H
#define HATSIM_HATSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HATSIM_API __declspec(dllexport)
#else
#define HATSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every function returning int returns one of these;
   hatsim_last_error() holds the message of the latest failure on the calling thread. */
enum {
  HATSIM_OK = 0,
  HATSIM_E_DOMAIN = 1,
  HATSIM_E_OVERFLOW = 2,
  HATSIM_E_CONFIG = 3,
  HATSIM_E_PARSE = 4,
  HATSIM_E_VALIDATION = 5,
  HATSIM_E_SINGULARITY = 6,
  HATSIM_E_TOLERANCE = 7,
  HATSIM_E_RESONANCE = 8,
  HATSIM_E_NO_ROOT = 9,
  HATSIM_E_QUADRATURE = 10,
  HATSIM_E_CONVERGENCE = 11,
  HATSIM_E_INFEASIBLE = 12,
  HATSIM_E_INVALID_ARGUMENT = 13,
  HATSIM_E_INTERNAL = 14
};

enum { HATSIM_BESSEL_J = 0, HATSIM_BESSEL_Y = 1, HATSIM_BESSEL_H1 = 2 };
enum { HATSIM_MODE_HAT = 0, HATSIM_MODE_RESONANCE = 1, HATSIM_MODE_CLOAK_LIKE = 2 };
enum { HATSIM_SOURCE_SCATTER = 0, HATSIM_SOURCE_EIGEN = 1, HATSIM_SOURCE_LIMIT = 2 };

typedef struct hatsim_config hatsim_config;
typedef struct hatsim_table hatsim_table;

HATSIM_API const char* hatsim_version(void);
HATSIM_API const char* hatsim_last_error(void);
/* "ok", "parse", "no-root", ... */
HATSIM_API const char* hatsim_status_name(int status);
/* Process exit code for a status: 0 ok, 2 configuration, 3 numerical, 4 no root. */
HATSIM_API int hatsim_exit_code(int status);
/* Line number of the latest parse failure on this thread, 0 if none. */
HATSIM_API int hatsim_last_error_line(void);

/* Configuration. */
HATSIM_API int hatsim_config_load(const char* path, hatsim_config** out);
HATSIM_API int hatsim_config_parse(const char* text, hatsim_config** out);
HATSIM_API void hatsim_config_free(hatsim_config* config);
HATSIM_API int hatsim_config_set_tau1(hatsim_config* config, double tau1);
HATSIM_API int hatsim_config_set_workers(hatsim_config* config, int workers);
/* name: rho, L, E, R0, tau1, n_max, workers, shells */
HATSIM_API int hatsim_config_get(const hatsim_config* config, const char* name, double* out);
/* Canonical INI text; release with hatsim_string_free. */
/* [run] output directory, "" when unset; valid while the config lives. */
HATSIM_API const char* hatsim_config_output(const hatsim_config* config);
HATSIM_API int hatsim_config_to_ini(const hatsim_config* config, char** out);
HATSIM_API uint64_t hatsim_config_hash(const hatsim_config* config);
HATSIM_API void hatsim_string_free(char* s);

/* Numerics. */
HATSIM_API int hatsim_sph_bessel(int kind, int n, double z_re, double z_im, double* out_re, double* out_im);
HATSIM_API int hatsim_find_tau1_sh(const hatsim_config* config, double* tau1);
HATSIM_API int hatsim_find_tau1_resonance(const hatsim_config* config, double* tau1);
HATSIM_API int hatsim_classify(const hatsim_config* config, double tau1, int* mode, double* interior_amplitude,
                               double* residual);
/* E1 of a uniform unit-mass ball of radius delta. */
HATSIM_API int hatsim_e1_uniform_ball(double delta, int cells, double* e1);

/* Runs; each produces a table owned by the caller. */
HATSIM_API int hatsim_run_tune(const hatsim_config* config, const double* extra_tau, size_t n_extra,
                               hatsim_table** out);
HATSIM_API int hatsim_run_probs(const hatsim_config* config, hatsim_table** out);
HATSIM_API int hatsim_run_eigen_field(const hatsim_config* config, int empty_ball, int points, hatsim_table** out);
HATSIM_API int hatsim_run_scatter(const hatsim_config* config, hatsim_table** out);
HATSIM_API int hatsim_run_field_plane(const hatsim_config* config, int source, char normal, double offset, int grid,
                                      double extent, hatsim_table** out);
HATSIM_API int hatsim_run_field_axis(const hatsim_config* config, int source, char axis, int grid,
                                     hatsim_table** out);
HATSIM_API int hatsim_run_monte(const hatsim_config* config, hatsim_table** out);
HATSIM_API int hatsim_run_interact(const hatsim_config* config, hatsim_table** out);
HATSIM_API int hatsim_run_veff(const hatsim_config* config, int points, hatsim_table** out);
HATSIM_API int hatsim_run_hetero(const hatsim_config* config, hatsim_table** out);
HATSIM_API int hatsim_run_stack(const hatsim_config* config, int J, hatsim_table** out);
HATSIM_API int hatsim_run_ratios(const hatsim_config* config, int points, hatsim_table** out);

/* Tables. */
HATSIM_API size_t hatsim_table_rows(const hatsim_table* table);
HATSIM_API size_t hatsim_table_cols(const hatsim_table* table);
HATSIM_API const char* hatsim_table_column(const hatsim_table* table, size_t col);
/* HATSIM_E_INVALID_ARGUMENT for text cells or out-of-range indices. */
HATSIM_API int hatsim_table_number(const hatsim_table* table, size_t row, size_t col, double* out);
/* Cell as printed in CSV; valid until the table is freed. */
HATSIM_API const char* hatsim_table_text(const hatsim_table* table, size_t row, size_t col);
/* Metadata value or NULL. */
HATSIM_API const char* hatsim_table_meta(const hatsim_table* table, const char* key);
HATSIM_API int hatsim_table_csv(const hatsim_table* table, char** out);
HATSIM_API void hatsim_table_free(hatsim_table* table);

#ifdef __cplusplus
}
#endif

#endif /* HATSIM_HATSIM_H */
