#ifndef JOHNSON_WALK_H
#define JOHNSON_WALK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum JwStatus {
  JW_STATUS_OK = 0,
  JW_STATUS_NULL_POINTER = 1,
  JW_STATUS_INVALID_ARGUMENT = 2,
  JW_STATUS_MEMORY_CAP = 3,
  JW_STATUS_NUMERICAL = 4,
  JW_STATUS_PANIC = 5,
} JwStatus;

/**
 * Opaque problem instance.
 */
typedef struct JwInstance JwInstance;

/**
 * Walk parameters: subset size `m`, inner steps `t1`, outer rounds `t2`.
 */
typedef struct JwRunParams {
  uint64_t m;
  uint64_t t1;
  uint64_t t2;
} JwRunParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call into the library from the same thread.
 */
const char *jw_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void jw_string_free(char *s);

/**
 * Generate an instance of a named family (`"element-distinctness"`,
 * `"zero-sum-xor"`, `"l-clique"`, ...).
 *
 * # Safety
 * `family` must be a NUL-terminated string; `out` must be writable.
 */
enum JwStatus jw_instance_generate(const char *family,
                                   uint64_t n,
                                   uint64_t l,
                                   uint64_t seed,
                                   bool plant,
                                   struct JwInstance **out);

/**
 * Parse an instance from its JSON file format.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum JwStatus jw_instance_from_json(const char *json, struct JwInstance **out);

/**
 * # Safety
 * `inst` must be valid; `out` must be writable. The string is freed with [`jw_string_free`].
 */
enum JwStatus jw_instance_to_json(const struct JwInstance *inst, char **out);

/**
 * # Safety
 * `inst` must be NULL or a handle from this library that has not been freed.
 */
void jw_instance_free(struct JwInstance *inst);

/**
 * Domain size N and subset size L of an instance.
 *
 * # Safety
 * `inst` must be valid; `n` and `l` must be writable.
 */
enum JwStatus jw_instance_shape(const struct JwInstance *inst, uint64_t *n, uint64_t *l);

/**
 * Number of marked subsets: 0, 1, or the exact count when several exist.
 *
 * # Safety
 * `inst` must be valid; `count` must be writable.
 */
enum JwStatus jw_instance_marked_count(const struct JwInstance *inst, uint64_t *count);

/**
 * Default parameters for `(n, l)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum JwStatus jw_default_params(uint64_t n, uint64_t l, struct JwRunParams *out);

/**
 * Run the full engine and return the run report as JSON.
 *
 * # Safety
 * `inst` and `params` must be valid; `out_json` must be writable.
 */
enum JwStatus jw_simulate_full(const struct JwInstance *inst,
                               const struct JwRunParams *params,
                               char **out_json);

/**
 * Run the reduced engine and return the run report as JSON.
 *
 * # Safety
 * `params` must be valid; `out_json` must be writable.
 */
enum JwStatus jw_simulate_reduced(uint64_t n,
                                  uint64_t l,
                                  const struct JwRunParams *params,
                                  char **out_json);

/**
 * Spectral report for `(n, m, l)` as JSON.
 *
 * # Safety
 * `out_json` must be writable.
 */
enum JwStatus jw_spectrum(uint64_t n, uint64_t m, uint64_t l, char **out_json);

/**
 * Clique exponent table as CSV.
 *
 * # Safety
 * `out_csv` must be writable.
 */
enum JwStatus jw_table1_csv(char **out_csv);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JOHNSON_WALK_H */
