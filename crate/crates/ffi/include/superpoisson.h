#ifndef SUPERPOISSON_H
#define SUPERPOISSON_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SpStatus {
  SP_STATUS_OK = 0,
  /**
   * The input was well formed but a mathematical check failed.
   */
  SP_STATUS_MATH_FAILURE = 1,
  SP_STATUS_INPUT_ERROR = 2,
  SP_STATUS_NULL_POINTER = 3,
  SP_STATUS_INVALID_UTF8 = 4,
  SP_STATUS_PANIC = 5,
} SpStatus;

/**
 * A parsed spec together with its bracket table.
 */
typedef struct SpSpec SpSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a spec document. On success `*out` owns a handle to be released
 * with `sp_spec_free`.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum SpStatus sp_spec_parse(const char *text, struct SpSpec **out);

/**
 * Releases a handle from `sp_spec_parse`. Null is ignored.
 *
 * # Safety
 * `spec` must be null or a handle not yet freed.
 */
void sp_spec_free(struct SpSpec *spec);

/**
 * Number of generators in the spec's algebra.
 *
 * # Safety
 * `spec` must be a live handle and `out` a valid pointer.
 */
enum SpStatus sp_spec_generator_count(const struct SpSpec *spec, size_t *out);

/**
 * Verifies the Poisson axioms. Returns `SP_STATUS_OK` if they hold and
 * `SP_STATUS_MATH_FAILURE` otherwise; in both cases `*report` (if non-null)
 * receives a JSON report to be released with `sp_string_free`.
 *
 * # Safety
 * `spec` must be a live handle; `report` may be null.
 */
enum SpStatus sp_check(const struct SpSpec *spec, char **report);

/**
 * Normal form of an enveloping-algebra expression such as `h(x1)*m(y1)`.
 * `*out` is released with `sp_string_free`.
 *
 * # Safety
 * `spec` must be a live handle, `expr` a NUL-terminated string, `out` valid.
 */
enum SpStatus sp_normalize(const struct SpSpec *spec, const char *expr, char **out);

/**
 * Number of PBW normal forms with per-generator m-exponents at most `dm`
 * and h-exponents at most `dh`.
 *
 * # Safety
 * `spec` must be a live handle and `out` a valid pointer.
 */
enum SpStatus sp_basis_count(const struct SpSpec *spec, uint32_t dm, uint32_t dh, size_t *out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void sp_string_free(char *s);

/**
 * Message for the most recent failing call on this thread, or null. The
 * pointer stays valid until the next call into this library on the thread.
 */
const char *sp_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPERPOISSON_H */
