/*
 * zndsolve C API.
 *
 * Discrete zeroing-neural-dynamics solvers for time-variant Sylvester-conjugate
 * matrix equations X F - A conj(X) - C = 0.
 *
 * Conventions:
 *  - Every function that can fail returns zs_status; on failure a message is
 *    available from zs_last_error() on the same thread until the next call.
 *  - Handles are opaque and owned by the caller; release them with the
 *    matching *_free / *_close function. Passing NULL to those is a no-op.
 *  - Complex m x n matrices cross the boundary as two column-major arrays of
 *    m*n doubles (real part, imaginary part).
 *  - Handles are immutable once created and may be shared between threads.
 */
#ifndef ZNDSOLVE_H
#define ZNDSOLVE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ZNDSOLVE_BUILDING)
#    define ZS_API __declspec(dllexport)
#  else
#    define ZS_API __declspec(dllimport)
#  endif
#else
#  define ZS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zs_status {
  ZS_OK = 0,
  ZS_ERR_INVALID_ARGUMENT = 1, /* NULL pointer, bad buffer size, unparsable text */
  ZS_ERR_UNKNOWN_NAME = 2,     /* no such problem or model */
  ZS_ERR_SHAPE = 3,
  ZS_ERR_CAPABILITY = 4,       /* e.g. complex gain on dznd2-2i, missing X* */
  ZS_ERR_VALIDATION = 5,       /* solver config violates an invariant */
  ZS_ERR_NUMERIC = 6,
  ZS_ERR_IO = 7,
  ZS_ERR_INTERNAL = 99
} zs_status;

typedef enum zs_model { ZS_MODEL_DZND1_2I = 1, ZS_MODEL_DZND2_2I = 2 } zs_model;

typedef enum zs_outcome { ZS_OUTCOME_COMPLETED = 0, ZS_OUTCOME_DIVERGED = 1 } zs_outcome;

typedef struct zs_problem zs_problem;
typedef struct zs_trajectory zs_trajectory;
typedef struct zs_sweep zs_sweep;

typedef struct zs_config {
  zs_model model;
  double gamma_re;
  double gamma_im;
  double epsilon;
  double duration;
  uint64_t seed;
  double pinv_tolerance; /* < 0 selects the default cutoff */
  double divergence_threshold;
} zs_config;

typedef struct zs_record {
  int64_t step;
  double tau;
  double equation_residual;
  double solution_error; /* NaN when the problem has no theoretical solution */
  int finite;
} zs_record;

typedef struct zs_sweep_point {
  zs_model model;
  double gamma_re;
  double gamma_im;
  double epsilon;
} zs_sweep_point;

typedef struct zs_sweep_row {
  zs_model model;
  double gamma_re;
  double gamma_im;
  double epsilon;
  int outcome; /* zs_outcome, or -1 for a run that raised an error */
  double tail_max_equation_residual;
  double tail_max_solution_error;
  int64_t steps;
  double wall_time_seconds;
} zs_sweep_row;

ZS_API const char* zs_version(void);
ZS_API const char* zs_last_error(void);
ZS_API const char* zs_status_name(zs_status status);

/* -- problems ------------------------------------------------------------ */

/* Space-separated list of registered problem names. */
ZS_API const char* zs_problem_names(void);
ZS_API zs_status zs_problem_open(const char* name, zs_problem** out);
ZS_API void zs_problem_close(zs_problem* problem);
ZS_API zs_status zs_problem_dims(const zs_problem* problem, size_t* m, size_t* n);
ZS_API zs_status zs_problem_equation_residual(const zs_problem* problem, const double* x_re,
                                              const double* x_im, double tau, double* out);
ZS_API zs_status zs_problem_solution_error(const zs_problem* problem, const double* x_re,
                                           const double* x_im, double tau, double* out);
ZS_API zs_status zs_problem_solution(const zs_problem* problem, double tau, double* x_re,
                                     double* x_im);
/* Seeded initial value, entries uniform in [-5, 5]. */
ZS_API zs_status zs_problem_initial_state(const zs_problem* problem, uint64_t seed,
                                          double* x_re, double* x_im);

/* -- configuration -------------------------------------------------------- */

/* dznd1-2i, gamma 10, epsilon 0.001, duration 10, seed 42, default cutoffs. */
ZS_API void zs_config_default(zs_config* config);
ZS_API zs_status zs_config_validate(const zs_config* config);
/* Accepts "a", "a+bi", "a-bi". */
ZS_API zs_status zs_parse_gain(const char* text, double* re, double* im);
/* Accepts "dznd1-2i", "dznd2-2i". */
ZS_API zs_status zs_parse_model(const char* text, zs_model* out);
ZS_API const char* zs_model_name(zs_model model);

/* |1 - epsilon * gamma| */
ZS_API double zs_scalar_error_modulus(double gamma_re, double gamma_im, double epsilon);

/* Roots of the Euler-forward characteristic polynomial. */
ZS_API zs_status zs_zero_stability_roots(double* roots_re, double* roots_im, size_t capacity,
                                         size_t* count);
/* Root condition for p(d) = coeffs[0] + coeffs[1] d + ... ; *out is 0 or 1. */
ZS_API zs_status zs_is_zero_stable(const double* coeffs, size_t count, int* out);

/* -- runs ----------------------------------------------------------------- */

/* Runs from the seeded random initial state. */
ZS_API zs_status zs_run(const zs_problem* problem, const zs_config* config, zs_trajectory** out);
/* Runs from an explicit m x n initial value. */
ZS_API zs_status zs_run_from(const zs_problem* problem, const zs_config* config,
                             const double* x0_re, const double* x0_im, zs_trajectory** out);
ZS_API void zs_trajectory_free(zs_trajectory* trajectory);
ZS_API size_t zs_trajectory_size(const zs_trajectory* trajectory);
ZS_API zs_outcome zs_trajectory_outcome(const zs_trajectory* trajectory);
/* Step index of divergence, or -1. */
ZS_API int64_t zs_trajectory_diverged_at(const zs_trajectory* trajectory);
ZS_API zs_status zs_trajectory_record(const zs_trajectory* trajectory, size_t index,
                                      zs_record* out);
/* Copies the stacked state [vec(X_re); vec(X_im)] (2*m*n doubles). */
ZS_API zs_status zs_trajectory_state(const zs_trajectory* trajectory, size_t index,
                                     double* buffer, size_t length);
/* Max over records with tau in [from_tau, to_tau]. */
ZS_API double zs_trajectory_tail_max_residual(const zs_trajectory* trajectory, double from_tau,
                                              double to_tau);
ZS_API double zs_trajectory_tail_max_solution_error(const zs_trajectory* trajectory,
                                                    double from_tau, double to_tau);
/* Writes trajectory.csv, summary.txt and residual.svg into dir. */
ZS_API zs_status zs_trajectory_write(const zs_trajectory* trajectory, const char* dir);

/* -- sweeps --------------------------------------------------------------- */

/* base supplies duration, seed, tolerance and threshold; model, gain and
 * epsilon come from each grid point. workers == 0 uses all cores. */
ZS_API zs_status zs_sweep_run(const zs_problem* problem, const zs_sweep_point* points,
                              size_t count, const zs_config* base, unsigned workers,
                              zs_sweep** out);
ZS_API void zs_sweep_free(zs_sweep* sweep);
ZS_API size_t zs_sweep_row_count(const zs_sweep* sweep);
ZS_API zs_status zs_sweep_get_row(const zs_sweep* sweep, size_t index, zs_sweep_row* out);
ZS_API size_t zs_sweep_fit_count(const zs_sweep* sweep);
/* *has_slope is 0 when fewer than 3 completed epsilons were available. */
ZS_API zs_status zs_sweep_fit(const zs_sweep* sweep, size_t index, zs_model* model,
                              double* gamma_re, double* gamma_im, int* has_slope,
                              double* slope);
/* Writes sweep.csv and order_report.txt into dir. */
ZS_API zs_status zs_sweep_write(const zs_sweep* sweep, const char* dir);

/* -- self checks ---------------------------------------------------------- */

typedef void (*zs_line_callback)(const char* line, void* user);
/* Runs the property groups, one callback per group; *all_passed is 0 or 1. */
ZS_API zs_status zs_verify(zs_line_callback callback, void* user, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* ZNDSOLVE_H */
