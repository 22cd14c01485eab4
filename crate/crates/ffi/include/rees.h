#ifndef REES_H
#define REES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum ReesStatus {
  REES_STATUS_OK = 0,
  REES_STATUS_NULL_POINTER = 1,
  REES_STATUS_INVALID_INPUT = 2,
  REES_STATUS_PARSE_ERROR = 3,
  REES_STATUS_EXCHANGE_FAILURE = 4,
  REES_STATUS_CAP_EXCEEDED = 5,
  REES_STATUS_PRECONDITION_FAILED = 6,
  REES_STATUS_INTEGRITY_ERROR = 7,
  REES_STATUS_PANIC = 8,
} ReesStatus;

typedef enum ReesClassification {
  REES_CLASSIFICATION_IDEAL = 0,
  REES_CLASSIFICATION_QUASI_IDEAL = 1,
  REES_CLASSIFICATION_NEITHER = 2,
} ReesClassification;

/**
 * Opaque monomial ideal.
 */
typedef struct ReesIdeal ReesIdeal;

/**
 * Opaque matroid.
 */
typedef struct ReesMatroid ReesMatroid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Null-terminated message for the last failed call on this thread, or null.
 * Valid until the next call into the library from the same thread.
 */
const char *rees_last_error(void);

/**
 * Library version as a static null-terminated string.
 */
const char *rees_version(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void rees_string_free(char *s);

/**
 * Builds an ideal from `q` exponent rows of length `n`, stored row-major.
 *
 * # Safety
 * `exponents` must point to `n * q` readable values; `out` must be writable.
 */
enum ReesStatus rees_ideal_new(size_t n,
                               const int64_t *exponents,
                               size_t q,
                               struct ReesIdeal **out);

/**
 * Builds an ideal from an instance document: an ideal, a polymatroid, or a
 * matroid (giving its basis ideal).
 *
 * # Safety
 * `json` must be a null-terminated string; `out` must be writable.
 */
enum ReesStatus rees_ideal_from_json(const char *json, struct ReesIdeal **out);

/**
 * # Safety
 * `ideal` must come from this library and not have been freed. Null is ignored.
 */
void rees_ideal_free(struct ReesIdeal *ideal);

/**
 * # Safety
 * `ideal` must be a live handle; `out` must be writable.
 */
enum ReesStatus rees_ideal_num_generators(const struct ReesIdeal *ideal, size_t *out);

/**
 * Builds a matroid on `{1..n}` from `num_bases` bases of `rank` elements
 * each, stored row-major and 1-indexed.
 *
 * # Safety
 * `bases` must point to `num_bases * rank` readable values; `out` must be writable.
 */
enum ReesStatus rees_matroid_new(size_t n,
                                 const size_t *bases,
                                 size_t num_bases,
                                 size_t rank,
                                 struct ReesMatroid **out);

/**
 * # Safety
 * `matroid` must come from this library and not have been freed. Null is ignored.
 */
void rees_matroid_free(struct ReesMatroid *matroid);

/**
 * New ideal handle for the basis monomial ideal of `matroid`.
 *
 * # Safety
 * `matroid` must be a live handle; `out` must be writable.
 */
enum ReesStatus rees_matroid_basis_ideal(const struct ReesMatroid *matroid, struct ReesIdeal **out);

/**
 * # Safety
 * `ideal` must be a live handle; `out` must be writable.
 */
enum ReesStatus rees_ideal_classify(const struct ReesIdeal *ideal, enum ReesClassification *out);

/**
 * Facet system as JSON `{"unit_normals": [...], "ell_normals": [[...]]}`.
 *
 * # Safety
 * `ideal` must be a live handle; `out` must be writable. Free the result
 * with `rees_string_free`.
 */
enum ReesStatus rees_ideal_facets_json(const struct ReesIdeal *ideal, char **out);

/**
 * Decides normality. `cap` bounds the Hilbert basis work (0 selects the
 * default). When `witness_json` is non-null it receives the certificate as
 * JSON, to be freed with `rees_string_free`.
 *
 * # Safety
 * `ideal` must be a live handle; `is_normal` must be writable;
 * `witness_json` must be null or writable.
 */
enum ReesStatus rees_ideal_is_normal(const struct ReesIdeal *ideal,
                                     uint64_t cap,
                                     bool *is_normal,
                                     char **witness_json);

/**
 * The full analysis document for an instance given as JSON text.
 *
 * # Safety
 * `instance_json` must be a null-terminated string; `out` must be writable.
 * Free the result with `rees_string_free`.
 */
enum ReesStatus rees_analyze_json(const char *instance_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REES_H */
