/* SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the VIDA domestic-violence simulator. All functions
 * return a vida_status; on any failure vida_last_error() describes what
 * went wrong (thread-local, valid until the next failing call on the
 * same thread). Objects are opaque; every create or load call that hands
 * one out is paired with a *_destroy. NULL is always safe to destroy.
 */
#ifndef VIDA_H
#define VIDA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vida_status {
  VIDA_OK = 0,
  VIDA_ERR_INVALID_ARGUMENT = 1, /* bad pointer, index, or buffer */
  VIDA_ERR_VALIDATION = 2,       /* a domain invariant was violated */
  VIDA_ERR_PARSE = 3,            /* malformed CSV/config/WKT input */
  VIDA_ERR_IO = 4,               /* file could not be read or written */
  VIDA_ERR_INTERNAL = 5          /* anything else */
} vida_status;

typedef struct vida_params vida_params;     /* simulation parameters */
typedef struct vida_profiles vida_profiles; /* list of area profiles */
typedef struct vida_results vida_results;   /* experiment reports */

/* Library version, e.g. "1.0.0". */
const char* vida_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* vida_last_error(void);

/* ---- parameters ------------------------------------------------------ */

/* Fresh parameter set with the model defaults. NULL on allocation
 * failure. */
vida_params* vida_params_create(void);
void vida_params_destroy(vida_params* params);

/* Apply the parameter keys of a config file (see data/vida.conf). Keys
 * that configure the run itself (profiles, out_dir) are read through
 * vida_config_* instead. */
vida_status vida_params_load(vida_params* params, const char* config_path);

/* Set/get one field by name; values are text ("0.4", "true", "123").
 * vida_params_get writes a NUL-terminated string into buf. */
vida_status vida_params_set(vida_params* params, const char* name,
                            const char* value);
vida_status vida_params_get(const vida_params* params, const char* name,
                            char* buf, size_t bufsize);

/* Check every field against its documented range. */
vida_status vida_params_validate(const vida_params* params);

/* ---- run configuration files ----------------------------------------- */

vida_status vida_config_profile_count(const char* config_path, int* out);
vida_status vida_config_profile_path(const char* config_path, int index,
                                     char* buf, size_t bufsize);
/* Output directory named by the config ("out" when unset). */
vida_status vida_config_out_dir(const char* config_path, char* buf,
                                size_t bufsize);

/* ---- area profiles ---------------------------------------------------- */

/* Load one CSV file of area profiles. */
vida_status vida_profiles_load(const char* csv_path, vida_profiles** out);

/* Load and concatenate several CSV files; duplicate area ids across
 * files are rejected. */
vida_status vida_profiles_load_many(const char* const* csv_paths,
                                    size_t n_paths, vida_profiles** out);

/* Deterministically generate synthetic profiles (test/demo fixtures). */
vida_status vida_profiles_generate(int areas, int families_per_area,
                                   uint64_t seed, int with_geometry,
                                   vida_profiles** out);

/* Write profiles in the CSV format vida_profiles_load reads. */
vida_status vida_profiles_write(const vida_profiles* profiles,
                                const char* csv_path);

void vida_profiles_destroy(vida_profiles* profiles);
int vida_profiles_count(const vida_profiles* profiles);
vida_status vida_profiles_area_id(const vida_profiles* profiles, int index,
                                  char* buf, size_t bufsize);

/* ---- running experiments ---------------------------------------------- */

/* threads: worker count, 0 = machine parallelism. Results are identical
 * for every thread count. */

/* Plain batch: replications x profiles, one report cell. */
vida_status vida_run_batch(const vida_params* params,
                           const vida_profiles* profiles, int threads,
                           vida_results** out);

/* The 2x2 deterrence x distancing design: four cells. */
vida_status vida_run_design(const vida_params* params,
                            const vida_profiles* profiles, int threads,
                            vida_results** out);

/* One cell per grid value for one sweepable parameter. */
vida_status vida_run_sweep(const vida_params* params,
                           const vida_profiles* profiles,
                           const char* parameter, const double* grid,
                           size_t grid_len, int threads, vida_results** out);

void vida_results_destroy(vida_results* results);

/* Aggregated statistics of one report cell. */
typedef struct vida_cell_stats {
  char cell_id[96];
  int has_parameter_value; /* 0: parameter_value is meaningless */
  double parameter_value;
  double cases_mean;
  double cases_median;
  double cases_sd;
  double denounces_mean;
  double denounces_median;
  double denounces_sd;
  int replications;
  uint64_t seed;
} vida_cell_stats;

int vida_results_cell_count(const vida_results* results);
vida_status vida_results_cell_stats(const vida_results* results, int index,
                                    vida_cell_stats* out);

/* One row per cell. */
vida_status vida_results_write_report_csv(const vida_results* results,
                                          const char* path);
/* One row per replication. */
vida_status vida_results_write_metrics_csv(const vida_results* results,
                                           const char* path);
/* Per-area GeoJSON FeatureCollection aggregated over all raw rows.
 * warnings_out (optional) receives the number of areas emitted without
 * geometry. */
vida_status vida_results_write_geojson(const vida_results* results,
                                       const vida_profiles* profiles,
                                       const char* path, int* warnings_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* VIDA_H */
