#ifndef QUARTIC_HASSE_H
#define QUARTIC_HASSE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QhStatus {
  QH_STATUS_OK = 0,
  QH_STATUS_NULL_POINTER = 1,
  QH_STATUS_INVALID_UTF8 = 2,
  QH_STATUS_PARSE = 3,
  QH_STATUS_OUT_OF_RANGE = 4,
  QH_STATUS_VALIDATION = 5,
  QH_STATUS_NOT_SMOOTH = 6,
  QH_STATUS_SEARCH_EXHAUSTED = 7,
  QH_STATUS_INTERNAL = 8,
  QH_STATUS_PANIC = 9,
} QhStatus;

/**
 * Opaque certificate handle.
 */
typedef struct QhCertificate QhCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null if none. Borrowed; valid
 * until the next call into this library on the same thread.
 */
const char *qh_last_error_message(void);

/**
 * Crate version. Static; never freed.
 */
const char *qh_version(void);

/**
 * Releases a string returned as owned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void qh_string_free(char *s);

/**
 * Certifies the tuple `b[0..5]`. `u` is a rational such as `"-1/197633"` or
 * null for the default. Singular quartics are retried up to `retries` times
 * with re-sampled `u`.
 *
 * # Safety
 * `b` must point to 5 integers, `u` must be null or a NUL-terminated string,
 * `out` must be writable.
 */
enum QhStatus qh_certify(const int64_t *b,
                         const char *u,
                         uint32_t retries,
                         struct QhCertificate **out);

/**
 * Loads a certificate from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum QhStatus qh_certificate_from_json(const char *json, struct QhCertificate **out);

/**
 * # Safety
 * `cert` must be null or a live handle; it is invalid afterwards.
 */
void qh_certificate_free(struct QhCertificate *cert);

/**
 * Stored verdict that the quartic fails the Hasse principle for bitangents.
 * False for a null handle.
 *
 * # Safety
 * `cert` must be null or a live handle.
 */
bool qh_certificate_bitangent_hasse_failure(const struct QhCertificate *cert);

/**
 * Stored verdict for symmetric determinantal representations.
 *
 * # Safety
 * `cert` must be null or a live handle.
 */
bool qh_certificate_sdr_hasse_failure(const struct QhCertificate *cert);

/**
 * The quartic as text. Borrowed from the handle.
 *
 * # Safety
 * `cert` must be null or a live handle.
 */
const char *qh_certificate_quartic(const struct QhCertificate *cert);

/**
 * The parameter tuple `b`, written to `b_out[0..5]`.
 *
 * # Safety
 * `cert` must be a live handle and `b_out` must have room for 5 integers.
 */
enum QhStatus qh_certificate_params(const struct QhCertificate *cert, int64_t *b_out);

/**
 * Pretty-printed JSON. Owned; release with [`qh_string_free`].
 *
 * # Safety
 * `cert` must be null or a live handle.
 */
char *qh_certificate_json(const struct QhCertificate *cert);

/**
 * Re-derives the verdicts from the stored sections. `agrees` receives whether
 * they match the stored verdicts and every place is consistent.
 *
 * # Safety
 * `cert` must be a live handle and `agrees` writable.
 */
enum QhStatus qh_certificate_recheck(const struct QhCertificate *cert, bool *agrees);

/**
 * Searches for a valid tuple with primes up to `bound`; writes it to `b_out[0..5]`.
 *
 * # Safety
 * `b_out` must have room for 5 integers.
 */
enum QhStatus qh_search_params(uint64_t bound, uint64_t seed, int64_t *b_out);

/**
 * Smoothness of a ternary quartic written like `"1 * X^4 + 1 * Y^4 + 1 * Z^4"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `smooth` writable.
 */
enum QhStatus qh_is_smooth_quartic(const char *text, bool *smooth);

/**
 * Number of conjugacy classes of `F_2^5` in `"sp6"`, `"u63"` or `"u36"`.
 *
 * # Safety
 * `ambient` must be a NUL-terminated string and `count` writable.
 */
enum QhStatus qh_classify_ea32_count(const char *ambient, size_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUARTIC_HASSE_H */
