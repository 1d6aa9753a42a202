#ifndef AWPROOF_H
#define AWPROOF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum AwStatus {
  AW_STATUS_OK = 0,
  AW_STATUS_NULL_POINTER = 1,
  AW_STATUS_INVALID_UTF8 = 2,
  AW_STATUS_PARSE = 3,
  AW_STATUS_DOMAIN = 4,
  AW_STATUS_DEGENERATE_PARAMS = 5,
  AW_STATUS_EXPONENT_OVERFLOW = 6,
  AW_STATUS_EIGENVALUE_COLLISION = 7,
  AW_STATUS_ORTHOGONALITY_BROKEN = 8,
  AW_STATUS_USAGE = 9,
  AW_STATUS_INDEX = 10,
  AW_STATUS_DEPENDENCY = 11,
  AW_STATUS_PROPORTIONALITY_FAILURE = 12,
  AW_STATUS_NO_RATIONAL_MATCH = 13,
  AW_STATUS_INTERNAL = 14,
  AW_STATUS_PANIC = 15,
} AwStatus;

/**
 * A `q`-context: `v = q^{1/2}` with its tabulated `q`-numbers.
 */
typedef struct AwContext AwContext;

/**
 * A monic family `p_0..p_N` with recurrence data.
 */
typedef struct AwFamily AwFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *aw_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void aw_string_free(char *s);

/**
 * Creates a context for `v = q^{1/2}` given as a rational string in (0, 1).
 *
 * # Safety
 * `qsqrt` must be a NUL-terminated string; `out` must be writable.
 */
enum AwStatus aw_context_new(const char *qsqrt, struct AwContext **out);

/**
 * # Safety
 * `ctx` must come from [`aw_context_new`] and not have been freed.
 */
void aw_context_free(struct AwContext *ctx);

/**
 * Writes `gamma_n` as a rational string.
 *
 * # Safety
 * `ctx` must be a live context; `out` must be writable.
 */
enum AwStatus aw_gamma(const struct AwContext *ctx, size_t n, char **out);

/**
 * Builds `p_0..p_{n_max}`. `params` holds four comma-separated rationals,
 * read as the elementary symmetric functions when `as_sigmas` is nonzero and
 * as the four parameters otherwise.
 *
 * # Safety
 * `ctx` must be a live context, `params` a NUL-terminated string, `out` writable.
 */
enum AwStatus aw_family_build(const struct AwContext *ctx,
                              const char *params,
                              int32_t as_sigmas,
                              size_t n_max,
                              struct AwFamily **out);

/**
 * Loads a family from the JSON written by [`aw_family_to_json`].
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum AwStatus aw_family_from_json(const char *json, struct AwFamily **out);

/**
 * # Safety
 * `fam` must come from this library and not have been freed.
 */
void aw_family_free(struct AwFamily *fam);

/**
 * Highest degree `N` in the family, or 0 for a null handle.
 *
 * # Safety
 * `fam` must be null or a live family.
 */
size_t aw_family_n_max(const struct AwFamily *fam);

/**
 * # Safety
 * `fam` must be a live family; `out` must be writable.
 */
enum AwStatus aw_family_to_json(const struct AwFamily *fam, char **out);

/**
 * Writes `C_n` as a rational string (`1 <= n < N`).
 *
 * # Safety
 * `fam` must be a live family; `out` must be writable.
 */
enum AwStatus aw_family_c(const struct AwFamily *fam, size_t n, char **out);

/**
 * Runs the proof chain for the orders `ks[0..nk]` up to `n_max` and writes
 * the JSON report. `*passed` is set to 1 iff every check passed. Failing
 * checks are not an error: the status is `AW_STATUS_OK` whenever a report
 * was produced.
 *
 * # Safety
 * `fam` must be a live family, `ks` must point to `nk` values, and `report`
 * and `passed` must be writable.
 */
enum AwStatus aw_verify_chain(const struct AwFamily *fam,
                              const size_t *ks,
                              size_t nk,
                              size_t n_max,
                              char **report,
                              int32_t *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AWPROOF_H */
