#ifndef VIRAPATH_H
#define VIRAPATH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VpMethod {
  VP_METHOD_BOSONIC = 0,
  VP_METHOD_FERMIONIC = 1,
  VP_METHOD_PATHS = 2,
} VpMethod;

typedef enum VpStatus {
  VP_STATUS_OK = 0,
  VP_STATUS_NULL_POINTER = 1,
  VP_STATUS_INVALID_MODEL = 2,
  VP_STATUS_OUT_OF_RANGE = 3,
  VP_STATUS_MALFORMED_PATH = 4,
  VP_STATUS_INADMISSIBLE = 5,
  VP_STATUS_PARSE = 6,
  /**
   * The requested move is not defined on the path.
   */
  VP_STATUS_UNDEFINED = 7,
  /**
   * A value does not fit the C type it is returned in.
   */
  VP_STATUS_OVERFLOW = 8,
  VP_STATUS_CAP_REACHED = 9,
  VP_STATUS_INTERNAL = 10,
} VpStatus;

typedef struct VpModel VpModel;

typedef struct VpPath VpPath;

typedef struct VpSeries VpSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *vp_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void vp_string_free(char *s);

/**
 * # Safety
 * `out` must be valid for a write.
 */
enum VpStatus vp_model_new(int64_t p, int64_t pp, struct VpModel **out);

/**
 * # Safety
 * `m` must be null or a handle from [`vp_model_new`], not yet freed.
 */
void vp_model_free(struct VpModel *m);

/**
 * `Delta_{r,s}` as a fraction.
 *
 * # Safety
 * `m` must be a live model; `num` and `den` must be valid for writes.
 */
enum VpStatus vp_conformal_dim(const struct VpModel *m,
                               int64_t r,
                               int64_t s,
                               int64_t *num,
                               int64_t *den);

/**
 * `chi_{r,1}` truncated at `trunc_num / trunc_den`. The path method sums
 * over lengths and fails with `CapReached` if the default length cap binds.
 *
 * # Safety
 * `m` must be a live model and `out` valid for a write.
 */
enum VpStatus vp_character(const struct VpModel *m,
                           enum VpMethod method,
                           int64_t r,
                           int64_t trunc_num,
                           int64_t trunc_den,
                           struct VpSeries **out);

/**
 * # Safety
 * `s` must be null or a handle from [`vp_character`], not yet freed.
 */
void vp_series_free(struct VpSeries *s);

/**
 * The coefficient of `q^(num/den)`. Fails with `OutOfRange` above the
 * truncation and `Overflow` if it does not fit in 64 bits.
 *
 * # Safety
 * `s` must be a live series and `out` valid for a write.
 */
enum VpStatus vp_series_coeff(const struct VpSeries *s, int64_t num, int64_t den, int64_t *out);

/**
 * The series as text, e.g. `1 + q^2 + O(q^(4))`. Null on failure.
 *
 * # Safety
 * `s` must be a live series.
 */
char *vp_series_to_string(const struct VpSeries *s);

/**
 * The series as a JSON object with exact string coefficients. Null on failure.
 *
 * # Safety
 * `s` must be a live series.
 */
char *vp_series_to_json(const struct VpSeries *s);

/**
 * Parses `r_L,...,r_0;sigma_{L-1},...,sigma_0`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` valid for a write.
 */
enum VpStatus vp_path_parse(const char *text, struct VpPath **out);

/**
 * # Safety
 * `p` must be null or a path handle from this library, not yet freed.
 */
void vp_path_free(struct VpPath *p);

/**
 * # Safety
 * `p` must be a live path.
 */
char *vp_path_to_string(const struct VpPath *p);

/**
 * The length `L`.
 *
 * # Safety
 * `p` must be a live path and `out` valid for a write.
 */
enum VpStatus vp_path_len(const struct VpPath *p, size_t *out);

/**
 * # Safety
 * `m` and `p` must be live handles and `out` valid for a write.
 */
enum VpStatus vp_path_is_admissible(const struct VpModel *m, const struct VpPath *p, bool *out);

/**
 * The degree `d(P)` as a fraction; fails on inadmissible paths.
 *
 * # Safety
 * `m` and `p` must be live handles; `num` and `den` valid for writes.
 */
enum VpStatus vp_path_degree(const struct VpModel *m,
                             const struct VpPath *p,
                             int64_t *num,
                             int64_t *den);

/**
 * Applies `M^+_j` (`dir > 0`) or `M^-_j` (`dir < 0`). Returns `Undefined`
 * and leaves `out` untouched if the move is not defined on the path.
 *
 * # Safety
 * `m` and `p` must be live handles and `out` valid for a write.
 */
enum VpStatus vp_path_move(const struct VpModel *m,
                           const struct VpPath *p,
                           size_t j,
                           int32_t dir,
                           struct VpPath **out);

/**
 * The rigging `lambda(P)` as a JSON array, largest part first. Null on failure.
 *
 * # Safety
 * `m` and `p` must be live handles.
 */
char *vp_path_rigging_json(const struct VpModel *m, const struct VpPath *p);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VIRAPATH_H */
