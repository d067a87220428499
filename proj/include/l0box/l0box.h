/* l0box: box-constrained l0-penalized regression solvers
 * Copyright 2026 The l0box Authors
 * Licensed under Apache 2.0
 *
 * C interface to the solver library. Handles are opaque; every call that can
 * fail returns an l0box_status and leaves a message for l0box_last_error()
 * on the calling thread. Strings returned through char** belong to the
 * caller and are released with l0box_string_free().
 */
#ifndef L0BOX_L0BOX_H
#define L0BOX_L0BOX_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define L0BOX_API __attribute__((visibility("default")))
#else
#define L0BOX_API
#endif

typedef enum {
    L0BOX_OK = 0,
    L0BOX_ERR_INVALID_ARGUMENT = 1, /* null pointer, size mismatch, bad enum */
    L0BOX_ERR_CONTRACT = 2,         /* inputs violate a documented precondition */
    L0BOX_ERR_NUMERIC = 3,          /* non-finite value during a solve, spectral norm failure */
    L0BOX_ERR_IO = 4,
    L0BOX_ERR_FORMAT = 5, /* malformed trace or metadata */
    L0BOX_ERR_INTERNAL = 6
} l0box_status;

typedef enum { L0BOX_LOSS_L1 = 0, L0BOX_LOSS_CENSORED = 1, L0BOX_LOSS_LEAST_SQUARES = 2 } l0box_loss;

typedef enum { L0BOX_SFIHT = 0, L0BOX_SIHT = 1, L0BOX_FIHT = 2, L0BOX_IHT = 3 } l0box_algorithm;

typedef enum {
    L0BOX_BETA_GENERIC = 0,
    L0BOX_BETA_SEQCONV = 1,
    L0BOX_BETA_FISTA = 2,
    L0BOX_BETA_ZERO = 3
} l0box_beta_strategy;

typedef enum { L0BOX_FALLBACK_SCALED = 0, L0BOX_FALLBACK_CAP = 1 } l0box_fiht_fallback;

typedef enum { L0BOX_EXAMPLE_41 = 0, L0BOX_EXAMPLE_42 = 1, L0BOX_EXAMPLE_43 = 2 } l0box_example;

typedef enum {
    L0BOX_PRESET_GENERIC = 0,
    L0BOX_PRESET_SEQCONV = 1,
    L0BOX_PRESET_FISTA = 2,
    L0BOX_PRESET_DEFAULT = 3
} l0box_beta_preset;

typedef struct l0box_problem l0box_problem;
typedef struct l0box_result l0box_result;

L0BOX_API const char *l0box_version(void);
L0BOX_API const char *l0box_status_string(l0box_status status);
/* Message of the last failed call on this thread, "" if none. */
L0BOX_API const char *l0box_last_error(void);
L0BOX_API void l0box_string_free(char *s);

/* ---- problems ---- */

/* A is m x n, row-major. lower/upper may be NULL for an unbounded side; use
 * -HUGE_VAL / HUGE_VAL entries for per-coordinate open sides. */
L0BOX_API l0box_status l0box_problem_create(l0box_loss loss, const double *A, size_t m, size_t n, const double *b,
                                            const double *lower, const double *upper, double lambda,
                                            l0box_problem **out);
L0BOX_API void l0box_problem_destroy(l0box_problem *problem);
L0BOX_API size_t l0box_problem_dim(const l0box_problem *problem);
/* Any output pointer may be NULL. */
L0BOX_API l0box_status l0box_problem_objective(const l0box_problem *problem, const double *x, size_t n,
                                               double *f_value, double *F_value, size_t *card);

/* ---- solving ---- */

typedef struct {
    l0box_algorithm algorithm;
    double L; /* <= 0 selects the default 2 * Lipschitz constant */
    double mu0;
    double sigma;
    double alpha;
    double epsilon;
    int64_t max_iter;
    l0box_beta_strategy beta_strategy; /* smoothing algorithms only */
    l0box_fiht_fallback fallback;      /* smooth algorithms only */
    const double *x0;                  /* NULL for the origin; length = problem dim */
    int audit_subproblem;
} l0box_solver_options;

L0BOX_API l0box_status l0box_solver_options_default(l0box_algorithm algorithm, l0box_solver_options *out);
L0BOX_API l0box_status l0box_solve(const l0box_problem *problem, const l0box_solver_options *options,
                                   l0box_result **out);
L0BOX_API void l0box_result_destroy(l0box_result *result);

L0BOX_API int64_t l0box_result_iterations(const l0box_result *result);
/* 1 when the stopping test fired, 0 at the iteration cap. */
L0BOX_API int l0box_result_converged(const l0box_result *result);
L0BOX_API size_t l0box_result_dim(const l0box_result *result);
L0BOX_API l0box_status l0box_result_x(const l0box_result *result, double *x, size_t n);
L0BOX_API size_t l0box_result_trace_length(const l0box_result *result);
L0BOX_API int64_t l0box_result_support_changes(const l0box_result *result);
/* Total energy-audit violations recorded during the solve. */
L0BOX_API int64_t l0box_result_audit_violations(const l0box_result *result);
/* Writes the trace CSV and, next to it, the .meta.json sidecar. */
L0BOX_API l0box_status l0box_result_write_trace(const l0box_result *result, const char *csv_path);

/* ---- benchmark experiments ---- */

typedef struct {
    l0box_example example;
    int64_t m, n, s;
    double noise_scale;
    uint64_t seed;
    double lambda;
    double epsilon;
    double sigma;
    double mu0;
    double alpha;
    int64_t max_iter;
    double L; /* <= 0 for the default */
    l0box_algorithm solver;
    l0box_beta_preset beta_preset;
    int run_baseline;
} l0box_experiment_spec;

L0BOX_API l0box_status l0box_experiment_spec_default(l0box_example example, int full_scale,
                                                     l0box_experiment_spec *out);
L0BOX_API l0box_status l0box_parse_example(const char *text, l0box_example *out);
L0BOX_API l0box_status l0box_parse_algorithm(const char *text, l0box_algorithm *out);
L0BOX_API l0box_status l0box_parse_beta_preset(const char *text, l0box_beta_preset *out);

/* Runs the experiment; out_dir may be NULL. summary_json receives summary.json. */
L0BOX_API l0box_status l0box_run_experiment(const l0box_experiment_spec *spec, const char *out_dir,
                                            char **summary_json);
/* One experiment per epsilon, rendered as a markdown table. */
L0BOX_API l0box_status l0box_table(const l0box_experiment_spec *spec, const double *epsilons, size_t count,
                                   char **markdown);

/* ---- oracle and audit ---- */

/* Exhaustive support enumeration on a tiny instance of the example (n <= 12),
 * compared against the example's solver. restricted_max_iter <= 0 keeps the
 * default budget. */
L0BOX_API l0box_status l0box_oracle_report(l0box_example example, int64_t n, uint64_t seed, double lambda,
                                           int64_t restricted_max_iter, char **report_json);

/* Replays the energy checks over a trace file. clean = 1 when nothing was
 * flagged; report receives a human-readable summary. */
L0BOX_API l0box_status l0box_audit_trace_file(const char *csv_path, int *clean, char **report);

#ifdef __cplusplus
}
#endif

#endif
