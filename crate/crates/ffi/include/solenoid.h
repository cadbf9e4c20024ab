/* C ABI for the solenoid exact-arithmetic library. */

#ifndef SOLENOID_H
#define SOLENOID_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every entry point.
 */
typedef enum SolStatus {
  SOL_STATUS_OK = 0,
  /**
   * Malformed or out-of-domain input.
   */
  SOL_STATUS_INVALID_INPUT = 2,
  /**
   * A resource guard tripped (orbit bit limit).
   */
  SOL_STATUS_RESOURCE_LIMIT = 3,
  /**
   * A required pointer argument was NULL.
   */
  SOL_STATUS_NULL_POINTER = 4,
  /**
   * A string argument was not valid UTF-8.
   */
  SOL_STATUS_INVALID_UTF8 = 5,
  /**
   * An internal invariant failed; the library state is still usable.
   */
  SOL_STATUS_PANIC = 6,
} SolStatus;

/**
 * Opaque evaluation context: the prime set and snowflake exponents.
 */
typedef struct SolContext SolContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *sol_version(void);

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread; do not free.
 */
const char *sol_last_error(void);

/**
 * Release a string returned through an out-parameter.
 *
 * # Safety
 * `s` must be a pointer previously returned by this library, or NULL.
 */
void sol_string_free(char *s);

/**
 * Create a context from `n_primes` strictly increasing primes and optional
 * comma-separated snowflake exponents (NULL or empty means all ones).
 * Returns NULL on invalid input (see [`sol_last_error`]).
 *
 * # Safety
 * `primes` must point to `n_primes` readable `uint64_t` values.
 */
struct SolContext *sol_context_new(const uint64_t *primes, size_t n_primes, const char *exponents);

/**
 * Release a context.
 *
 * # Safety
 * `ctx` must come from [`sol_context_new`] and not be used afterwards.
 */
void sol_context_free(struct SolContext *ctx);

/**
 * Snowflake distance between two ambient points, as exact text.
 *
 * # Safety
 * All pointers must be valid; `out` receives a caller-owned string.
 */
enum SolStatus sol_dist(const struct SolContext *ctx, const char *a, const char *b, char **out);

/**
 * Quotient (solenoid) distance between the cosets of two points.
 *
 * # Safety
 * As for [`sol_dist`].
 */
enum SolStatus sol_quotient_dist(const struct SolContext *ctx,
                                 const char *a,
                                 const char *b,
                                 char **out);

/**
 * Canonical representative and audit shift as JSON
 * `{"rep":"...","shift":"..."}`.
 *
 * # Safety
 * As for [`sol_dist`].
 */
enum SolStatus sol_reduce(const struct SolContext *ctx, const char *point, char **out);

/**
 * Coset equality of two ambient points.
 *
 * # Safety
 * As for [`sol_dist`]; `out` must point to a writable `bool`.
 */
enum SolStatus sol_coset_eq(const struct SolContext *ctx, const char *a, const char *b, bool *out);

/**
 * Hausdorff dimension for the context's exponents, as exact text.
 *
 * # Safety
 * As for [`sol_dist`].
 */
enum SolStatus sol_hausdorff_dim(const struct SolContext *ctx, char **out);

/**
 * Exact Haar measure of a closed metric ball of radius `rho`.
 *
 * # Safety
 * As for [`sol_dist`].
 */
enum SolStatus sol_ball_measure(const struct SolContext *ctx, const char *rho, char **out);

/**
 * Measure-scaling factor of coordinatewise multiplication by a point.
 *
 * # Safety
 * As for [`sol_dist`].
 */
enum SolStatus sol_mu_scaling(const struct SolContext *ctx, const char *point, char **out);

/**
 * Covering number of the fundamental box at radius `rho` (exact count as
 * text) plus the log-ratio dimension estimate.
 *
 * # Safety
 * As for [`sol_dist`]; `out_estimate` must point to a writable `double`.
 */
enum SolStatus sol_box_count(const struct SolContext *ctx,
                             const char *rho,
                             char **out_count,
                             double *out_estimate);

/**
 * Seeded Haar-uniform sample of the fundamental domain, as JSON
 * `{"rep":"...","shift":"0"}`; identical seeds give identical bytes.
 *
 * # Safety
 * As for [`sol_dist`].
 */
enum SolStatus sol_sample_haar(const struct SolContext *ctx,
                               uint32_t depth,
                               uint64_t seed,
                               char **out);

/**
 * Exact character phase in `[0, 1)` at comma-separated `levels` and integer
 * frequency, evaluated on the coset of `point`.
 *
 * # Safety
 * As for [`sol_dist`].
 */
enum SolStatus sol_char_eval(const struct SolContext *ctx,
                             const char *levels,
                             int64_t frequency,
                             const char *point,
                             char **out);

/**
 * Real-line approximation of the coset of `point` to tolerance `eps`, as
 * JSON `{"s":"...","level":"...","distance":"..."}`.
 *
 * # Safety
 * As for [`sol_dist`].
 */
enum SolStatus sol_line_approximation(const struct SolContext *ctx,
                                      const char *point,
                                      const char *eps,
                                      char **out);

/**
 * Determinant classification of a matrix (rows `;`-separated, entries
 * `,`-separated), as JSON `{"det":"...","class":"..."}`.
 *
 * # Safety
 * As for [`sol_dist`].
 */
enum SolStatus sol_classify(const struct SolContext *ctx, const char *matrix, char **out);

/**
 * Iterate a matrix action on a torus point (components `|`-separated), as a
 * JSON array of `{"step":...,"component":...,"rep":"..."}` rows. Returns
 * `SOL_STATUS_RESOURCE_LIMIT` if an iterate exceeds `bit_limit` total bits
 * (pass 0 for the built-in default).
 *
 * # Safety
 * As for [`sol_dist`].
 */
enum SolStatus sol_orbit(const struct SolContext *ctx,
                         const char *matrix,
                         const char *point,
                         size_t steps,
                         uint64_t bit_limit,
                         char **out);

/**
 * Chinese remainder solve for `;`-separated `residue,modulus` pairs, as
 * exact text.
 *
 * # Safety
 * As for [`sol_dist`].
 */
enum SolStatus sol_crt_solve(const char *pairs, char **out);

/**
 * p-adic valuation of a rational: writes whether it is infinite (the value
 * is zero) and, if finite, the exponent.
 *
 * # Safety
 * As for [`sol_dist`]; both out-pointers must be writable.
 */
enum SolStatus sol_valuation(const char *x, uint64_t p, bool *out_is_infinite, int64_t *out_value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SOLENOID_H */
