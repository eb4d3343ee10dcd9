/*
 * C interface of the adjoint-method Cauchy solver.
 *
 * Every fallible call returns an acy_status; on failure the message is
 * available from acy_last_error() on the calling thread until the next
 * failing call. Objects are opaque handles released with their *_free
 * function; passing NULL to a *_free function is a no-op. Strings returned
 * as `const char*` are owned by the handle they came from.
 */
#ifndef ADJOINT_CAUCHY_H
#define ADJOINT_CAUCHY_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(ACY_BUILDING_LIBRARY)
#    define ACY_API __declspec(dllexport)
#  else
#    define ACY_API __declspec(dllimport)
#  endif
#else
#  define ACY_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum acy_status {
  ACY_OK = 0,
  ACY_ERR_INVALID_ARGUMENT = 1,
  ACY_ERR_CONFIG = 2,
  ACY_ERR_NUMERICAL = 3,
  ACY_ERR_IO = 4,
  ACY_ERR_OUT_OF_RANGE = 5,
  ACY_ERR_INTERNAL = 6
} acy_status;

ACY_API const char* acy_version(void);
ACY_API const char* acy_status_string(acy_status status);
ACY_API const char* acy_last_error(void);

/* ---- Mode theory on the annulus r_inner < r < r_outer ------------------- */

ACY_API acy_status acy_trace_factor(int mode, double r_inner, double r_outer, double* out);
ACY_API acy_status acy_c_factor(int mode, double r_inner, double r_outer, double* out);
ACY_API acy_status acy_compression_factor(int low, int high, double rho, double r_inner,
                                          double r_outer, double* out);
ACY_API acy_status acy_optimal_step(int low, int high, double r_inner, double r_outer,
                                    double* rho, double* delta);
/* descending != 0 selects rho_k = 1/C_{N-k}, otherwise 1/C_{M+k}. */
ACY_API acy_status acy_sweep_step(int k, int low, int high, int descending, double r_inner,
                                  double r_outer, double tail_rho, double* out);

/* ---- Meshes and direct solves ------------------------------------------- */

typedef struct acy_mesh acy_mesh;

ACY_API acy_status acy_mesh_create(double r_inner, double r_outer, int n_radial, int n_angular,
                                   acy_mesh** out);
ACY_API void acy_mesh_free(acy_mesh* mesh);
ACY_API size_t acy_mesh_node_count(const acy_mesh* mesh);
ACY_API size_t acy_mesh_triangle_count(const acy_mesh* mesh);
ACY_API size_t acy_mesh_ring_size(const acy_mesh* mesh);
ACY_API double acy_mesh_area(const acy_mesh* mesh);
/* Writes <prefix>nodes.csv and <prefix>tris.csv. */
ACY_API acy_status acy_mesh_write_csv(const acy_mesh* mesh, const char* prefix);

/* Solves -Lap v = 0 with dv/dn = q_outer on the outer ring and v = w_inner on
 * the inner ring. Ring arrays hold acy_mesh_ring_size() samples at
 * theta_k = 2 pi k / n; `field` receives acy_mesh_node_count() values. */
ACY_API acy_status acy_mesh_solve(const acy_mesh* mesh, const double* q_outer,
                                  const double* w_inner, size_t ring_size, double* field,
                                  size_t field_size);
/* Ring values and outward normal flux of a solved field; outer != 0 picks
 * the outer ring. */
ACY_API acy_status acy_mesh_trace(const acy_mesh* mesh, const double* field, size_t field_size,
                                  int outer, double* values, size_t ring_size);
ACY_API acy_status acy_mesh_normal_flux(const acy_mesh* mesh, const double* field,
                                        size_t field_size, int outer, double* values,
                                        size_t ring_size);

/* ---- Experiments --------------------------------------------------------- */

typedef struct acy_experiment acy_experiment;

ACY_API acy_status acy_experiment_load_file(const char* path, acy_experiment** out);
ACY_API acy_status acy_experiment_parse(const char* json, acy_experiment** out);
ACY_API void acy_experiment_free(acy_experiment* experiment);
/* Keys: backend, strategy, j_tol, mesh, output, max_iters, criterion. */
ACY_API acy_status acy_experiment_override(acy_experiment* experiment, const char* key,
                                           const char* value);
ACY_API const char* acy_experiment_output(const acy_experiment* experiment);
ACY_API acy_status acy_experiment_mesh(const acy_experiment* experiment, acy_mesh** out);

typedef struct acy_iteration_record {
  int k;
  double functional;
  double grad_norm;
  double rho;
  size_t primary_solves;
  size_t adjoint_solves;
  size_t line_search_solves;
} acy_iteration_record;

typedef struct acy_run_summary {
  int converged;
  int iterations;
  double final_functional;
  size_t primary_solves;
  size_t adjoint_solves;
  size_t line_search_solves;
  /* 2 * iterations + line_search_solves */
  size_t total_direct_solves;
  double wall_seconds;
  /* max |omega - omega*| on the inner ring; NaN when omega* is unknown */
  double omega_max_error;
} acy_run_summary;

typedef struct acy_run acy_run;

ACY_API acy_status acy_run_experiment(const acy_experiment* experiment, acy_run** out);
ACY_API void acy_run_free(acy_run* run);
ACY_API acy_status acy_run_get_summary(const acy_run* run, acy_run_summary* out);
ACY_API const char* acy_run_status(const acy_run* run);
ACY_API const char* acy_run_label(const acy_run* run);
ACY_API const char* acy_run_diagnostic(const acy_run* run);
ACY_API size_t acy_run_history_size(const acy_run* run);
ACY_API acy_status acy_run_history_record(const acy_run* run, size_t index,
                                          acy_iteration_record* out);
ACY_API size_t acy_run_omega_size(const acy_run* run);
ACY_API acy_status acy_run_omega(const acy_run* run, double* theta, double* omega,
                                 size_t capacity);
/* history.csv, omega_final.csv, summary.json */
ACY_API acy_status acy_run_write(const acy_run* run, const char* prefix);

typedef struct acy_comparison acy_comparison;

ACY_API acy_status acy_compare_experiment(const acy_experiment* experiment,
                                          acy_comparison** out);
ACY_API void acy_comparison_free(acy_comparison* comparison);
ACY_API size_t acy_comparison_size(const acy_comparison* comparison);
/* Borrowed; valid while the comparison lives. */
ACY_API const acy_run* acy_comparison_run(const acy_comparison* comparison, size_t index);
ACY_API acy_status acy_comparison_write(const acy_comparison* comparison, const char* prefix);

typedef struct acy_oracle_mode {
  int mode;
  double trace_error;
  double flux_error;
  double chained_flux_error;
  double fine_trace_error;
  double fine_flux_error;
  int trace_ok;
  int flux_ok;
  int shrink_ok;
} acy_oracle_mode;

typedef struct acy_oracle_report acy_oracle_report;

ACY_API acy_status acy_oracle_check(const acy_experiment* experiment, acy_oracle_report** out);
ACY_API void acy_oracle_report_free(acy_oracle_report* report);
ACY_API size_t acy_oracle_report_size(const acy_oracle_report* report);
ACY_API acy_status acy_oracle_report_mode(const acy_oracle_report* report, size_t index,
                                          acy_oracle_mode* out);
ACY_API int acy_oracle_report_passed(const acy_oracle_report* report);
ACY_API double acy_oracle_report_tolerance(const acy_oracle_report* report);
ACY_API int acy_oracle_report_refined(const acy_oracle_report* report);

#ifdef __cplusplus
}
#endif

#endif /* ADJOINT_CAUCHY_H */
