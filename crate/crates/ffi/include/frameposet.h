#ifndef FRAMEPOSET_H
#define FRAMEPOSET_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum {
  FP_STATUS_OK = 0,
  FP_STATUS_NULL_POINTER = 1,
  FP_STATUS_INVALID_ARGUMENT = 2,
  FP_STATUS_PARSE = 3,
  FP_STATUS_NOT_A_FRAME = 4,
  FP_STATUS_NOT_TIGHT = 5,
  FP_STATUS_ZERO_VECTOR = 6,
  FP_STATUS_TOO_LARGE = 7,
  FP_STATUS_BUFFER_TOO_SMALL = 8,
  FP_STATUS_PANIC = 99,
} FpStatus;

/**
 * Opaque frame handle.
 */
typedef struct FpFrame FpFrame;

/**
 * Opaque factor-poset handle.
 */
typedef struct FpPoset FpPoset;

/**
 * Tolerances; pass NULL anywhere one is expected to use the defaults.
 */
typedef struct {
  double zero_rel;
  double rank_rel;
  uint64_t seed;
} FpTolerance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *fp_last_error_message(void);

/**
 * Default tolerances.
 */
FpTolerance fp_tolerance_default(void);

/**
 * Real frame of `k` vectors in dimension `n`; `data` holds `k * n` doubles,
 * one vector after another.
 *
 * # Safety
 * `data` must point to `k * n` readable doubles and `out` must be writable.
 */
FpStatus fp_frame_new_real(size_t n, size_t k, const double *data, FpFrame **out);

/**
 * Complex frame; `re` and `im` each hold `k * n` doubles, vector-major.
 *
 * # Safety
 * `re` and `im` must point to `k * n` readable doubles and `out` must be writable.
 */
FpStatus fp_frame_new_complex(size_t n,
                              size_t k,
                              const double *re,
                              const double *im,
                              FpFrame **out);

/**
 * Parses a frame file document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` must be writable.
 */
FpStatus fp_frame_from_json(const char *json, FpFrame **out);

/**
 * # Safety
 * `frame` must be NULL or a handle from this library, not yet freed.
 */
void fp_frame_free(FpFrame *frame);

/**
 * Dimension, or 0 for NULL.
 *
 * # Safety
 * `frame` must be NULL or a live handle.
 */
size_t fp_frame_dim(const FpFrame *frame);

/**
 * Number of vectors, or 0 for NULL.
 *
 * # Safety
 * `frame` must be NULL or a live handle.
 */
size_t fp_frame_len(const FpFrame *frame);

/**
 * Frame document with 17 significant digits.
 *
 * # Safety
 * `frame` must be a live handle and `out` writable.
 */
FpStatus fp_frame_to_json(const FpFrame *frame, char **out);

/**
 * Optimal frame bounds.
 *
 * # Safety
 * `frame` must be a live handle, `tol` NULL or readable, `lower`/`upper` writable.
 */
FpStatus fp_frame_bounds(const FpFrame *frame,
                         const FpTolerance *tol,
                         double *lower,
                         double *upper);

/**
 * Whether the subframe on `mask` is tight (1) or not (0).
 *
 * # Safety
 * `frame` must be a live handle, `tol` NULL or readable, `tight` writable.
 */
FpStatus fp_frame_is_tight(const FpFrame *frame,
                           uint32_t mask,
                           const FpTolerance *tol,
                           int32_t *tight);

/**
 * Canonical dual as a new frame handle.
 *
 * # Safety
 * `frame` must be a live handle, `tol` NULL or readable, `out` writable.
 */
FpStatus fp_canonical_dual(const FpFrame *frame, const FpTolerance *tol, FpFrame **out);

/**
 * Alternate tight dual of a tight frame. When only the canonical dual is
 * tight (`k < 2n`) the canonical dual is returned and `alternate` is 0.
 *
 * # Safety
 * `frame` must be a live handle, `tol` NULL or readable, the outputs writable.
 */
FpStatus fp_tight_dual(const FpFrame *frame,
                       double alpha,
                       const FpTolerance *tol,
                       FpFrame **out,
                       double *bound,
                       int32_t *alternate);

/**
 * Factor poset of a frame; `cap` 0 selects the default ground-set cap.
 *
 * # Safety
 * `frame` must be a live handle, `tol` NULL or readable, `out` writable.
 */
FpStatus fp_factor_poset(const FpFrame *frame, const FpTolerance *tol, size_t cap, FpPoset **out);

/**
 * Parses a poset file document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
FpStatus fp_poset_from_json(const char *json, FpPoset **out);

/**
 * # Safety
 * `poset` must be NULL or a handle from this library, not yet freed.
 */
void fp_poset_free(FpPoset *poset);

/**
 * Ground-set size, or 0 for NULL.
 *
 * # Safety
 * `poset` must be NULL or a live handle.
 */
size_t fp_poset_ground(const FpPoset *poset);

/**
 * Number of members including the empty set, or 0 for NULL.
 *
 * # Safety
 * `poset` must be NULL or a live handle.
 */
size_t fp_poset_len(const FpPoset *poset);

/**
 * Member masks in sorted order. `count` receives the number of members even
 * when the buffer is too small.
 *
 * # Safety
 * `poset` must be a live handle, `buf` writable for `cap` entries, `count` writable.
 */
FpStatus fp_poset_members(const FpPoset *poset, uint32_t *buf, size_t cap, size_t *count);

/**
 * Empty-cover masks, same buffer protocol as `fp_poset_members`.
 *
 * # Safety
 * As for `fp_poset_members`.
 */
FpStatus fp_poset_empty_cover(const FpPoset *poset, uint32_t *buf, size_t cap, size_t *count);

/**
 * Characteristic counts; `buf` must hold `fp_poset_ground` entries.
 *
 * # Safety
 * `poset` must be a live handle and `buf` writable for `cap` entries.
 */
FpStatus fp_poset_characteristic(const FpPoset *poset, size_t *buf, size_t cap);

/**
 * Runs the necessary checks for a candidate poset; `passed` receives 1 or 0
 * and `violations` the number of violated conditions.
 *
 * # Safety
 * `poset` must be a live handle and the outputs writable.
 */
FpStatus fp_poset_necessary_check(const FpPoset *poset, int32_t *passed, size_t *violations);

/**
 * Looks for a permutation of the ground set taking `p` onto `q`. `found`
 * receives 1 and `perm` (room for `cap` entries) the 0-based images when
 * one exists.
 *
 * # Safety
 * `p`, `q` must be live handles; `perm` writable for `cap` entries; `found` writable.
 */
FpStatus fp_poset_strongly_isomorphic(const FpPoset *p,
                                      const FpPoset *q,
                                      size_t *perm,
                                      size_t cap,
                                      int32_t *found);

/**
 * Poset file document.
 *
 * # Safety
 * `poset` must be a live handle and `out` writable.
 */
FpStatus fp_poset_to_json(const FpPoset *poset, char **out);

/**
 * Hasse diagram in DOT.
 *
 * # Safety
 * `poset` must be a live handle and `out` writable.
 */
FpStatus fp_poset_to_dot(const FpPoset *poset, char **out);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a string from this library, not yet freed.
 */
void fp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRAMEPOSET_H */
