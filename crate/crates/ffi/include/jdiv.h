#ifndef JDIV_H
#define JDIV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum JdivStatus {
  JDIV_STATUS_OK = 0,
  // A required pointer was null.
  JDIV_STATUS_NULL_POINTER = 1,
  // An argument failed validation (bad probabilities, α ≤ 0, shapes...).
  JDIV_STATUS_INVALID_ARGUMENT = 2,
  // The result is infinite (support violation in a relative entropy).
  JDIV_STATUS_INFINITE = 3,
  // The distance matrix is not of negative type, so it cannot be embedded.
  JDIV_STATUS_NOT_NEGATIVE_TYPE = 4,
  // A caller-provided buffer is too small.
  JDIV_STATUS_BUFFER_TOO_SMALL = 5,
  // The library panicked; this is a bug.
  JDIV_STATUS_PANIC = 6,
} JdivStatus;

// Opaque validated density matrix.
typedef struct JdivDensityMatrix JdivDensityMatrix;

// Opaque validated squared-distance matrix.
typedef struct JdivDistanceMatrix JdivDistanceMatrix;

// Opaque validated probability vector.
typedef struct JdivDistribution JdivDistribution;

// Lower bound, divergence and upper bound at total variation `v`.
typedef struct JdivBounds {
  double lower;
  double value;
  double upper;
  double v;
} JdivBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null if none. The
// pointer stays valid until the next failing call on the same thread.
const char *jdiv_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *jdiv_version(void);

// Validates `len` probabilities and returns a new handle in `*out`.
//
// # Safety
// `probs` must point to `len` readable doubles and `out` must be writable.
enum JdivStatus jdiv_distribution_new(const double *probs,
                                      size_t len,
                                      struct JdivDistribution **out);

// Releases a handle from [`jdiv_distribution_new`]; null is ignored.
//
// # Safety
// `p` must be null or a live handle not freed before.
void jdiv_distribution_free(struct JdivDistribution *p);

// Number of letters, or 0 for a null handle.
//
// # Safety
// `p` must be null or a live handle.
size_t jdiv_distribution_len(const struct JdivDistribution *p);

// Builds a `dim × dim` state from row-major real and imaginary parts;
// `im` may be null for a real matrix.
//
// # Safety
// `re` (and `im` when non-null) must point to `dim·dim` doubles; `out`
// must be writable.
enum JdivStatus jdiv_density_matrix_new(size_t dim,
                                        const double *re,
                                        const double *im,
                                        struct JdivDensityMatrix **out);

// # Safety
// `rho` must be null or a live handle not freed before.
void jdiv_density_matrix_free(struct JdivDensityMatrix *rho);

// Hilbert-space dimension, or 0 for a null handle.
//
// # Safety
// `rho` must be null or a live handle.
size_t jdiv_density_matrix_dim(const struct JdivDensityMatrix *rho);

// Validates a row-major `n × n` squared-distance matrix.
//
// # Safety
// `d` must point to `n·n` doubles and `out` must be writable.
enum JdivStatus jdiv_distance_matrix_new(size_t n,
                                         const double *d,
                                         struct JdivDistanceMatrix **out);

// # Safety
// `d` must be null or a live handle not freed before.
void jdiv_distance_matrix_free(struct JdivDistanceMatrix *d);

// Number of points, or 0 for a null handle.
//
// # Safety
// `d` must be null or a live handle.
size_t jdiv_distance_matrix_n(const struct JdivDistanceMatrix *d);

// Copies entry `(i, j)` into `*out`.
//
// # Safety
// `d` must be a live handle and `out` writable.
enum JdivStatus jdiv_distance_matrix_get(const struct JdivDistanceMatrix *d,
                                         size_t i,
                                         size_t j,
                                         double *out);

// Entropy of order α (Shannon at α = 1).
//
// # Safety
// `p` must be a live handle and `out` writable.
enum JdivStatus jdiv_alpha_entropy(const struct JdivDistribution *p, double a, double *out);

// Quantum entropy of order α (von Neumann at α = 1).
//
// # Safety
// `rho` must be a live handle and `out` writable.
enum JdivStatus jdiv_q_alpha_entropy(const struct JdivDensityMatrix *rho, double a, double *out);

// `JD_α(P, Q)`.
//
// # Safety
// `p`, `q` must be live handles and `out` writable.
enum JdivStatus jdiv_jd_alpha(const struct JdivDistribution *p,
                              const struct JdivDistribution *q,
                              double a,
                              double *out);

// `QJD_α(ρ, σ)`.
//
// # Safety
// `rho`, `sigma` must be live handles and `out` writable.
enum JdivStatus jdiv_qjd_alpha(const struct JdivDensityMatrix *rho,
                               const struct JdivDensityMatrix *sigma,
                               double a,
                               double *out);

// `D(P‖Q)`; reports [`JdivStatus::Infinite`] when `P` is not supported
// inside `Q`.
//
// # Safety
// `p`, `q` must be live handles and `out` writable.
enum JdivStatus jdiv_kl_divergence(const struct JdivDistribution *p,
                                   const struct JdivDistribution *q,
                                   double *out);

// `Σ|p_i − q_i|`, in `[0, 2]`.
//
// # Safety
// `p`, `q` must be live handles and `out` writable.
enum JdivStatus jdiv_total_variation(const struct JdivDistribution *p,
                                     const struct JdivDistribution *q,
                                     double *out);

// `‖ρ − σ‖₁`, in `[0, 2]`.
//
// # Safety
// `rho`, `sigma` must be live handles and `out` writable.
enum JdivStatus jdiv_trace_distance(const struct JdivDensityMatrix *rho,
                                    const struct JdivDensityMatrix *sigma,
                                    double *out);

// Pairwise `JD_α` matrix of `count` distributions.
//
// # Safety
// `points` must point to `count` live handles; `out` must be writable.
enum JdivStatus jdiv_divergence_matrix(const struct JdivDistribution *const *points,
                                       size_t count,
                                       double a,
                                       struct JdivDistanceMatrix **out);

// Pairwise `QJD_α` matrix of `count` states.
//
// # Safety
// `states` must point to `count` live handles; `out` must be writable.
enum JdivStatus jdiv_q_divergence_matrix(const struct JdivDensityMatrix *const *states,
                                         size_t count,
                                         double a,
                                         struct JdivDistanceMatrix **out);

// Negative-type test. `tol < 0` or NaN selects the default tolerance
// `1e−9·n·max|D|`. `min_eigenvalue` may be null.
//
// # Safety
// `d` must be a live handle; `is_negative_type` writable.
enum JdivStatus jdiv_negative_type_check(const struct JdivDistanceMatrix *d,
                                         double tol,
                                         bool *is_negative_type,
                                         double *min_eigenvalue);

// Determinant of the bordered Cayley–Menger matrix.
//
// # Safety
// `d` must be a live handle and `out` writable.
enum JdivStatus jdiv_cayley_menger_det(const struct JdivDistanceMatrix *d, double *out);

// Spectral embedding. Coordinates are written row-major as `n × dim` into
// `coords`, which must hold `n·n` doubles; `dim` and
// `reconstruction_error` (nullable) receive the rest.
//
// # Safety
// `d` must be a live handle; `coords` must hold `capacity` doubles.
enum JdivStatus jdiv_embed(const struct JdivDistanceMatrix *d,
                           double *coords,
                           size_t capacity,
                           size_t *dim,
                           double *reconstruction_error);

// `E(α)` of the three-point triangle counterexample; positive means the
// triangle inequality for `√JD_α` fails.
//
// # Safety
// `out` must be writable.
enum JdivStatus jdiv_counterexample_energy(double a, double *out);

// Cayley–Menger determinant of the four-point two-letter configuration
// with spacing `eps` in `(0, 1/6)`.
//
// # Safety
// `out` must be writable.
enum JdivStatus jdiv_quadruple_cm_determinant(double a, double eps, double *out);

// `x^α` via its integral representation, for α in `(0,1) ∪ (1,2)`.
//
// # Safety
// `out` must be writable.
enum JdivStatus jdiv_power_integral(double x, double a, double *out);

// Lower bound, `JD_α` and upper bound for a pair of distributions.
//
// # Safety
// `p`, `q` must be live handles and `out` writable.
enum JdivStatus jdiv_bounds(const struct JdivDistribution *p,
                            const struct JdivDistribution *q,
                            double a,
                            struct JdivBounds *out);

// Trace-distance bounds on `QJD_α` for a pair of states.
//
// # Safety
// `rho`, `sigma` must be live handles and `out` writable.
enum JdivStatus jdiv_q_bounds(const struct JdivDensityMatrix *rho,
                              const struct JdivDensityMatrix *sigma,
                              double a,
                              struct JdivBounds *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JDIV_H */
