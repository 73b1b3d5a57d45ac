#ifndef QCORR_QCORR_H
#define QCORR_QCORR_H

/* C interface to the qcorr library. Every function that can fail returns a
 * qcorr_status; on failure qcorr_last_error() describes the problem for the
 * calling thread. Handles are opaque and released with the matching _free
 * function. Strings returned through char** are released with
 * qcorr_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QCORR_BUILDING_LIBRARY)
#    define QCORR_API __declspec(dllexport)
#  else
#    define QCORR_API __declspec(dllimport)
#  endif
#else
#  define QCORR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qcorr_status {
  QCORR_OK = 0,
  QCORR_ERR_NOT_HERMITIAN,
  QCORR_ERR_NOT_PSD,
  QCORR_ERR_CONVERGENCE_FAILURE,
  QCORR_ERR_INVALID_PARTITION,
  QCORR_ERR_NOT_NORMALIZED,
  QCORR_ERR_THETA_OUT_OF_RANGE,
  QCORR_ERR_WRONG_DIMENSION,
  QCORR_ERR_OPTIMIZER_FAILURE,
  QCORR_ERR_INTERNAL_INCONSISTENCY,
  QCORR_ERR_UNSUPPORTED,
  QCORR_ERR_DOMAIN,
  QCORR_ERR_NO_BRANCH,
  QCORR_ERR_PATTERN_UNSUPPORTED,
  QCORR_ERR_ZERO_MEASURE,
  QCORR_ERR_ASSERTION_FAILURE,
  QCORR_ERR_INVALID_ARGUMENT,
  QCORR_ERR_IO,
  QCORR_ERR_NULL_ARGUMENT,
  QCORR_ERR_INTERNAL
} qcorr_status;

typedef enum qcorr_measure {
  QCORR_MEASURE_CONCURRENCE = 0,
  QCORR_MEASURE_NEGATIVITY,
  QCORR_MEASURE_CREN,
  QCORR_MEASURE_NEGATIVITY_OF_ASSISTANCE,
  QCORR_MEASURE_CONCURRENCE_OF_ASSISTANCE,
  QCORR_MEASURE_ENTANGLEMENT_OF_FORMATION
} qcorr_measure;

typedef enum qcorr_branch {
  QCORR_BRANCH_TAIL_DOMINANT = 0,
  QCORR_BRANCH_PAIR_DOMINANT,
  QCORR_BRANCH_MIXED
} qcorr_branch;

typedef enum qcorr_polygamy_domain {
  QCORR_POLYGAMY_CONCURRENCE = 0,
  QCORR_POLYGAMY_NEGATIVITY_OF_ASSISTANCE
} qcorr_polygamy_domain;

typedef struct qcorr_pure_state qcorr_pure_state;
typedef struct qcorr_density qcorr_density;

typedef struct qcorr_bound_params {
  double p, q, k, alpha, beta, r, s;
} qcorr_bound_params;

typedef struct qcorr_bound_report {
  double lhs;   /* NaN when no joint value was supplied */
  double bound;
  double slack; /* NaN when no joint value was supplied */
  qcorr_branch branch;
  size_t tail_dominant_count;
  int has_comparator;
  double comparator_bound;
  qcorr_bound_params params;
} qcorr_bound_report;

typedef struct qcorr_budget {
  size_t restarts;
  size_t ensemble_cap; /* 0 selects twice the rank */
  size_t max_sweeps;
  double min_step;
  uint64_t seed;
} qcorr_budget;

typedef struct qcorr_grid {
  double min, max, step;
} qcorr_grid;

#define QCORR_MAX_POINT 4

typedef struct qcorr_summary {
  uint64_t samples_total;
  uint64_t samples_applicable;
  uint64_t samples_unsupported;
  uint64_t violations;
  double worst_slack;
  double worst_point[QCORR_MAX_POINT];
  size_t worst_point_len;
  uint64_t base_checked;
  uint64_t base_violations;
  double base_worst_slack;
  double tolerance;
  double runtime_seconds;
  uint64_t seed;
} qcorr_summary;

typedef struct qcorr_verify_config {
  uint64_t samples;
  uint64_t seed;
  qcorr_bound_params params;
  size_t n_qubits;
  double tolerance;
  qcorr_budget budget;
  size_t threads; /* 0 = hardware concurrency */
} qcorr_verify_config;

QCORR_API const char* qcorr_version(void);
QCORR_API const char* qcorr_status_name(qcorr_status status);
/* Message of the last failure on this thread; empty after a success. */
QCORR_API const char* qcorr_last_error(void);
QCORR_API void qcorr_string_free(char* str);

QCORR_API void qcorr_bound_params_default(qcorr_bound_params* params);
QCORR_API void qcorr_budget_default(qcorr_budget* budget);
QCORR_API void qcorr_verify_config_default(qcorr_verify_config* config);

/* States. Amplitudes and matrices are split into real and imaginary arrays;
 * matrices are row-major. */
QCORR_API qcorr_status qcorr_pure_state_new(const double* re, const double* im, size_t len, const size_t* dims,
                                            size_t n_factors, qcorr_pure_state** out);
QCORR_API qcorr_status qcorr_gsd_state(const double lambdas[5], double theta, qcorr_pure_state** out);
QCORR_API qcorr_status qcorr_random_pure(const size_t* dims, size_t n_factors, uint64_t seed, qcorr_pure_state** out);
QCORR_API qcorr_status qcorr_pure_state_from_json(const char* json, qcorr_pure_state** out);
QCORR_API qcorr_status qcorr_pure_state_to_json(const qcorr_pure_state* state, char** out);
QCORR_API qcorr_status qcorr_pure_state_amplitudes(const qcorr_pure_state* state, double* re, double* im, size_t len);
QCORR_API size_t qcorr_pure_state_dim(const qcorr_pure_state* state);
QCORR_API void qcorr_pure_state_free(qcorr_pure_state* state);

QCORR_API qcorr_status qcorr_density_new(const double* re, const double* im, size_t dim, const size_t* dims,
                                         size_t n_factors, qcorr_density** out);
QCORR_API qcorr_status qcorr_density_from_pure(const qcorr_pure_state* state, qcorr_density** out);
QCORR_API qcorr_status qcorr_partial_trace(const qcorr_density* rho, const size_t* traced_out, size_t n_traced,
                                           qcorr_density** out);
QCORR_API qcorr_status qcorr_density_matrix(const qcorr_density* rho, double* re, double* im, size_t dim);
QCORR_API size_t qcorr_density_dim(const qcorr_density* rho);
QCORR_API void qcorr_density_free(qcorr_density* rho);

/* Measures across the bipartition side_a | rest. budget may be NULL. */
QCORR_API qcorr_status qcorr_measure_pure(const qcorr_pure_state* state, const size_t* side_a, size_t n_side_a,
                                          qcorr_measure kind, double* out);
QCORR_API qcorr_status qcorr_measure_density(const qcorr_density* rho, const size_t* side_a, size_t n_side_a,
                                             qcorr_measure kind, const qcorr_budget* budget, double* out);

/* Bounds. joint may be NULL; otherwise lhs and slack are filled. */
QCORR_API qcorr_status qcorr_mono_pair_bound(double c12, double c13, const qcorr_bound_params* params,
                                             const double* joint, qcorr_bound_report* out);
QCORR_API qcorr_status qcorr_mono_chain_bound(const double* pairs, size_t n_pairs, const double* tails,
                                              size_t n_tails, const qcorr_bound_params* params, const double* joint,
                                              qcorr_bound_report* out);
QCORR_API qcorr_status qcorr_poly_pair_bound_concurrence(double c12, double c13, const qcorr_bound_params* params,
                                                         const double* joint, qcorr_bound_report* out);
QCORR_API qcorr_status qcorr_poly_pair_bound_noa(double n12, double n13, const qcorr_bound_params* params,
                                                 const double* joint, qcorr_bound_report* out);
QCORR_API qcorr_status qcorr_poly_chain_bound(const double* pairs, size_t n_pairs, const double* tails,
                                              size_t n_tails, const qcorr_bound_params* params,
                                              qcorr_polygamy_domain domain, const double* joint,
                                              qcorr_bound_report* out);
QCORR_API qcorr_status qcorr_lemma1_gap(double t, double k, double p, double x, double* out);
QCORR_API qcorr_status qcorr_lemma2_gap(double t, double k, double q, double x, double* out);
QCORR_API qcorr_status qcorr_bound_report_to_json(const qcorr_bound_report* report, char** out);

/* Harness. csv_path may be NULL to skip the CSV file. The example runs fill
 * *out and write the CSV even when they return QCORR_ERR_ASSERTION_FAILURE. */
QCORR_API qcorr_status qcorr_run_example1(const qcorr_grid* alpha, const qcorr_grid* r, double p, double k,
                                          const char* csv_path, qcorr_summary* out);
QCORR_API qcorr_status qcorr_run_example2(const qcorr_grid* beta, const qcorr_grid* s, double q, double k,
                                          const char* csv_path, qcorr_summary* out);
QCORR_API qcorr_status qcorr_verify_monogamy(const qcorr_verify_config* config, qcorr_summary* out);
QCORR_API qcorr_status qcorr_verify_polygamy(const qcorr_verify_config* config, qcorr_measure kind,
                                             qcorr_summary* out);
/* config_json may be NULL for the default grid of lemma `which`. */
QCORR_API qcorr_status qcorr_lemma_grid(int which, const char* config_json, qcorr_summary* out);
/* csv_path overrides the config's "out" field when not NULL. */
QCORR_API qcorr_status qcorr_sweep(const char* config_json, const char* csv_path, qcorr_summary* out);
QCORR_API qcorr_status qcorr_summary_to_json(const qcorr_summary* summary, char** out);

#ifdef __cplusplus
}
#endif

#endif
