#ifndef QPLANE_H
#define QPLANE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QpEmbedMode {
  QP_EMBED_MODE_FRAME = 0,
  QP_EMBED_MODE_FRAME_POINTS = 1,
  QP_EMBED_MODE_LIFT = 2,
  QP_EMBED_MODE_PLANAR = 3,
} QpEmbedMode;

typedef enum QpStatus {
  QP_STATUS_OK = 0,
  /**
   * The decision procedure answered no.
   */
  QP_STATUS_NEGATIVE = 1,
  QP_STATUS_INVALID_INPUT = 2,
  QP_STATUS_PARSE_ERROR = 3,
  QP_STATUS_PRECONDITION = 4,
  QP_STATUS_NULL_POINTER = 5,
  QP_STATUS_INVALID_UTF8 = 6,
  QP_STATUS_INTERNAL = 7,
  QP_STATUS_PANIC = 8,
} QpStatus;

/**
 * Opaque projective plane handle.
 */
typedef struct QpPlane QpPlane;

/**
 * Opaque quasigroup handle.
 */
typedef struct QpQuasigroup QpQuasigroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Owned by the
 * library and valid until the next call on the same thread.
 */
const char *qp_last_error(void);

/**
 * Library version as a static string.
 */
const char *qp_version(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void qp_string_free(char *s);

/**
 * Parses a Latin square in .lsq format.
 *
 * # Safety
 * `lsq` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QpStatus qp_quasigroup_from_lsq(const char *lsq, struct QpQuasigroup **out);

/**
 * Order of the quasigroup, 0 for NULL.
 *
 * # Safety
 * `q` must be NULL or a live handle.
 */
size_t qp_quasigroup_order(const struct QpQuasigroup *q);

/**
 * # Safety
 * `q` must be NULL or a handle that is not used afterwards.
 */
void qp_quasigroup_free(struct QpQuasigroup *q);

/**
 * Builds PG(2, q) for a prime power q up to 16.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum QpStatus qp_plane_from_field(size_t q, struct QpPlane **out);

/**
 * Parses a plane in .pln format.
 *
 * # Safety
 * `pln` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QpStatus qp_plane_from_pln(const char *pln, struct QpPlane **out);

/**
 * Order n of the plane, 0 for NULL.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
size_t qp_plane_order(const struct QpPlane *p);

/**
 * # Safety
 * `p` must be NULL or a handle that is not used afterwards.
 */
void qp_plane_free(struct QpPlane *p);

/**
 * Decides whether the expansion matroid of `q` embeds in `p` in the given
 * mode. Returns `Ok` for yes and `Negative` for no; in both cases `*report`
 * receives the JSON witnesses (free with [`qp_string_free`]).
 *
 * # Safety
 * Handles must be live and `report` a valid pointer.
 */
enum QpStatus qp_embed(const struct QpQuasigroup *q,
                       const struct QpPlane *p,
                       enum QpEmbedMode mode,
                       bool all,
                       size_t jobs,
                       char **report);

/**
 * Thickens a .bg3 biased graph; `*report` receives JSON with the expansion,
 * the inclusion map, γ and the bound.
 *
 * # Safety
 * `bg3` must be a NUL-terminated string and `report` a valid pointer.
 */
enum QpStatus qp_thicken(const char *bg3, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QPLANE_H */
