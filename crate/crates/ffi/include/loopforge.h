#ifndef LOOPFORGE_H
#define LOOPFORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum LfStatus {
  LF_STATUS_OK = 0,
  LF_STATUS_NULL_POINTER = 1,
  LF_STATUS_INVALID_TABLE = 2,
  LF_STATUS_OUT_OF_RANGE = 3,
  LF_STATUS_CAP_EXCEEDED = 4,
  LF_STATUS_INVALID_ARGUMENT = 5,
  LF_STATUS_HYPOTHESIS_VIOLATED = 6,
  LF_STATUS_BUDGET_EXHAUSTED = 7,
  LF_STATUS_BUFFER_TOO_SMALL = 8,
  LF_STATUS_PANIC = 9,
} LfStatus;

/**
 * Opaque loop handle.
 */
typedef struct LfLoop LfLoop;

/**
 * Opaque mapping handle.
 */
typedef struct LfMapping LfMapping;

/**
 * Classification flags of a mapping.
 */
typedef struct LfMapClass {
  bool is_automorphism;
  bool is_anti_automorphism;
  bool is_semi_automorphism;
  size_t order;
} LfMapClass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *lf_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *lf_version(void);

/**
 * Build a loop from `n * n` row-major cells. Element 0 must be the identity.
 *
 * # Safety
 * `cells` must point to `n * n` readable values; `out` must be writable.
 */
enum LfStatus lf_loop_from_table(size_t n, const uint32_t *cells, struct LfLoop **out);

/**
 * Build a catalog loop by name (`z5`, `sym3`, `q8`, `chein:sym3`, `cml81`, ...).
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum LfStatus lf_loop_catalog(const char *name, struct LfLoop **out);

/**
 * Release a loop. Null is ignored.
 *
 * # Safety
 * `l` must come from this library and not be used afterwards.
 */
void lf_loop_free(struct LfLoop *l);

/**
 * Order of a loop, or 0 for a null handle.
 *
 * # Safety
 * `l` must be null or a live handle.
 */
size_t lf_loop_order(const struct LfLoop *l);

/**
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum LfStatus lf_loop_mul(const struct LfLoop *l, size_t x, size_t y, size_t *out);

/**
 * Copy the `n * n` cells into `buf`, which holds `len` values.
 *
 * # Safety
 * `buf` must point to `len` writable values.
 */
enum LfStatus lf_loop_copy_table(const struct LfLoop *l, uint32_t *buf, size_t len);

/**
 * Full Moufang scan; with `all_four` every identity is checked.
 *
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum LfStatus lf_loop_is_moufang(const struct LfLoop *l, bool all_four, bool *out);

/**
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum LfStatus lf_loop_is_group(const struct LfLoop *l, bool *out);

/**
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum LfStatus lf_loop_is_commutative(const struct LfLoop *l, bool *out);

/**
 * Order-`2|N|` double `N ∪ Nu` of a group `N`.
 *
 * # Safety
 * `base` must be a live handle; `out` must be writable.
 */
enum LfStatus lf_loop_chein_double(const struct LfLoop *base, struct LfLoop **out);

/**
 * Materialize the cyclic extension of `base` of degree `h` by `action`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum LfStatus lf_extension_materialize(const struct LfLoop *base,
                                       size_t h,
                                       const struct LfMapping *action,
                                       struct LfLoop **out);

/**
 * Check the factorized product law for `g = N⟨u⟩` with `N` given by its
 * members. Hypothesis failures return `HypothesisViolated`.
 *
 * # Safety
 * `g` must be a live handle; `members` must point to `len` values.
 */
enum LfStatus lf_verify_theorem1(const struct LfLoop *g,
                                 const size_t *members,
                                 size_t len,
                                 size_t u,
                                 bool *out);

/**
 * Build a mapping from its image array.
 *
 * # Safety
 * `images` must point to `n` values; `out` must be writable.
 */
enum LfStatus lf_mapping_new(const size_t *images, size_t n, struct LfMapping **out);

/**
 * Inversion `x ↦ x⁻¹` of a loop.
 *
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum LfStatus lf_mapping_inversion(const struct LfLoop *l, struct LfMapping **out);

/**
 * The semi-automorphism `(a,b,c) ↦ (a/k, b/k, ck + ab(k⁻² − k)/2)` of the Heisenberg group over `F_q`.
 *
 * # Safety
 * `out` must be writable.
 */
enum LfStatus lf_mapping_rajah(uint64_t q,
                               uint64_t k,
                               struct LfMapping **out);

/**
 * Release a mapping. Null is ignored.
 *
 * # Safety
 * `m` must come from this library and not be used afterwards.
 */
void lf_mapping_free(struct LfMapping *m);

/**
 * Number of points, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t lf_mapping_len(const struct LfMapping *m);

/**
 * Image of a single point.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum LfStatus lf_mapping_apply(const struct LfMapping *m, size_t x, size_t *out);

/**
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum LfStatus lf_mapping_classify(const struct LfLoop *l,
                                  const struct LfMapping *m,
                                  struct LfMapClass *out);

/**
 * Count semi-automorphisms, optionally only those fixing the identity.
 * `budget` bounds the search nodes; 0 uses the library default.
 *
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum LfStatus lf_semiaut_count(const struct LfLoop *l,
                               uint64_t budget,
                               bool identity_fixing,
                               size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOOPFORGE_H */
