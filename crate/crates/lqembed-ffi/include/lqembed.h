#ifndef LQEMBED_H
#define LQEMBED_H

/* Generated by cbindgen from the lqembed-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status of a call. Values equal the CLI exit codes so scripted callers see
 * one convention across both surfaces.
 */
typedef enum LqStatus {
  LqStatus_Ok = 0,
  /**
   * Malformed input: null pointer, bad rational string, out-of-range
   * parameter, wrong vector length, or an unsupported exponent class.
   */
  LqStatus_InvalidInput = 2,
  /**
   * The requested window degenerates to a point (for example n = 2).
   */
  LqStatus_DegenerateWindow = 3,
  /**
   * A broken invariant or a caught panic; always a bug.
   */
  LqStatus_Internal = 4,
} LqStatus;

/**
 * Opaque handle to a perturbed norm family; create with `lq_family_new`,
 * release with `lq_family_free`.
 */
typedef struct LqFamily LqFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Engine version as a static string; the pointer stays valid for the whole
 * process and must not be freed.
 */
const char *lq_version(void);

/**
 * Creates a family handle for ambient dimension `n` and profile power `s`.
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
enum LqStatus lq_family_new(uint32_t n, uint32_t s, struct LqFamily **out);

/**
 * Releases a family handle; null is a no-op.
 *
 * # Safety
 * `family` must be null or a pointer returned by `lq_family_new` that has
 * not been freed yet.
 */
void lq_family_free(struct LqFamily *family);

/**
 * Evaluates the norm at `x` (length `len`, which must equal the family's
 * dimension) for the perturbation strength `lambda`, an exact rational
 * string such as "1/14".
 *
 * # Safety
 * `family` must be a live handle; `lambda` a NUL-terminated string; `x` an
 * array of `len` doubles; `out` writable storage for one double.
 */
enum LqStatus lq_family_evaluate(const struct LqFamily *family,
                                 const char *lambda,
                                 const double *x,
                                 size_t len,
                                 double *out);

/**
 * Writes the certified lambda convexity window of the family as JSON.
 *
 * # Safety
 * `family` must be a live handle; `out` writable storage for one pointer.
 * The returned string must be released with `lq_string_free`.
 */
enum LqStatus lq_convexity_interval_json(const struct LqFamily *family, char **out);

/**
 * Writes the exact embedding threshold certificate for exponent `q` (an
 * exact rational string) as JSON. A degenerate window still returns Ok; the
 * certificate carries the flag.
 *
 * # Safety
 * `family` must be a live handle; `q` a NUL-terminated string; `out`
 * writable storage for one pointer. Release the string with
 * `lq_string_free`.
 */
enum LqStatus lq_threshold_json(const struct LqFamily *family, const char *q, char **out);

/**
 * Decides whether the family at strength `lambda` embeds isometrically in
 * L_q. Both parameters are exact rational strings.
 *
 * # Safety
 * `family` must be a live handle; `q` and `lambda` NUL-terminated strings;
 * `out` writable storage for one bool.
 */
enum LqStatus lq_embeds(const struct LqFamily *family,
                        const char *q,
                        const char *lambda,
                        bool *out);

/**
 * Writes the full counterexample bundle for dimension `n` as JSON: the
 * witness lambda, the norm decision, and the embeds / fails-to-embed pair.
 * Returns DegenerateWindow for n = 2, where no witness exists.
 *
 * # Safety
 * `out` must point to writable storage for one pointer. Release the string
 * with `lq_string_free`.
 */
enum LqStatus lq_counterexample_json(uint32_t n, char **out);

/**
 * Releases a string returned by any of the *_json calls; null is a no-op.
 *
 * # Safety
 * `s` must be null or a string pointer obtained from this library that has
 * not been freed yet.
 */
void lq_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LQEMBED_H */
