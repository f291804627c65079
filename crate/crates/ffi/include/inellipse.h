#ifndef INELLIPSE_H
#define INELLIPSE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum InellipseStatus {
  INELLIPSE_STATUS_OK = 0,
  INELLIPSE_STATUS_NULL_POINTER = 1,
  INELLIPSE_STATUS_NON_FINITE_INPUT = 2,
  INELLIPSE_STATUS_NON_CONVEX = 3,
  INELLIPSE_STATUS_COLLINEAR_POINTS = 4,
  INELLIPSE_STATUS_PARALLELOGRAM = 5,
  INELLIPSE_STATUS_NOT_AN_ELLIPSE = 6,
  INELLIPSE_STATUS_PARAMETER_OUT_OF_RANGE = 7,
  INELLIPSE_STATUS_INDEX_OUT_OF_RANGE = 8,
  INELLIPSE_STATUS_INVALID_ARGUMENT = 9,
  INELLIPSE_STATUS_INTERNAL = 10,
} InellipseStatus;

typedef enum InellipseClass {
  INELLIPSE_CLASS_PARALLELOGRAM = 0,
  INELLIPSE_CLASS_TRAPEZOID = 1,
  INELLIPSE_CLASS_MDQ_TYPE1 = 2,
  INELLIPSE_CLASS_MDQ_TYPE2 = 3,
  INELLIPSE_CLASS_GENERIC = 4,
} InellipseClass;

/**
 * Opaque list of midpoint-tangent ellipses.
 */
typedef struct InellipseEllipseList InellipseEllipseList;

/**
 * Opaque convex quadrilateral in canonical labeling.
 */
typedef struct InellipseQuad InellipseQuad;

/**
 * An inscribed ellipse in user coordinates.
 */
typedef struct InellipseEllipse {
  double q;
  /**
   * Canonical A, B, C, D, E, F.
   */
  double coefficients[6];
  /**
   * Tangency points on S1..S4 as x1, y1, ..., x4, y4.
   */
  double tangency[8];
  /**
   * Bit `j − 1` set when side `j` is touched at its midpoint.
   */
  uint8_t midpoint_sides;
  double area;
} InellipseEllipse;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static, NUL-terminated description of `status`.
 */
const char *inellipse_status_message(enum InellipseStatus status);

/**
 * Builds a quadrilateral from `coords = {x1, y1, ..., x4, y4}` in any order.
 *
 * # Safety
 * `coords` must point to 8 readable doubles and `out` to a writable pointer.
 */
enum InellipseStatus inellipse_quad_new(const double *coords, struct InellipseQuad **out);

/**
 * # Safety
 * `quad` must come from [`inellipse_quad_new`] and not be used afterwards.
 */
void inellipse_quad_free(struct InellipseQuad *quad);

/**
 * Vertices A1..A4 in canonical (clockwise) labeling.
 *
 * # Safety
 * `out` must point to 8 writable doubles.
 */
enum InellipseStatus inellipse_quad_vertices(const struct InellipseQuad *quad, double *out);

/**
 * Classification at relative tolerance `tol` (non-positive means the default).
 *
 * # Safety
 * Pointers must be valid.
 */
enum InellipseStatus inellipse_quad_classify(const struct InellipseQuad *quad,
                                             double tol,
                                             enum InellipseClass *out);

/**
 * Parameters `(s, t)` of the normalized form `Q(s,t)`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum InellipseStatus inellipse_quad_normalize(const struct InellipseQuad *quad,
                                              double *s,
                                              double *t);

/**
 * Inscribed ellipses tangent at side midpoints.
 *
 * # Safety
 * Pointers must be valid; free the list with [`inellipse_ellipse_list_free`].
 */
enum InellipseStatus inellipse_midpoint_ellipses(const struct InellipseQuad *quad,
                                                 struct InellipseEllipseList **out);

/**
 * Number of ellipses in `list` (0 for a null list).
 *
 * # Safety
 * `list` must be null or valid.
 */
size_t inellipse_ellipse_list_len(const struct InellipseEllipseList *list);

/**
 * # Safety
 * Pointers must be valid.
 */
enum InellipseStatus inellipse_ellipse_list_get(const struct InellipseEllipseList *list,
                                                size_t index,
                                                struct InellipseEllipse *out);

/**
 * # Safety
 * `list` must come from [`inellipse_midpoint_ellipses`] and not be used afterwards.
 */
void inellipse_ellipse_list_free(struct InellipseEllipseList *list);

/**
 * The maximal-area inscribed ellipse.
 *
 * # Safety
 * Pointers must be valid.
 */
enum InellipseStatus inellipse_max_area(const struct InellipseQuad *quad,
                                        struct InellipseEllipse *out);

/**
 * Family member `q ∈ (0, 1)`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum InellipseStatus inellipse_family_ellipse(const struct InellipseQuad *quad,
                                              double q,
                                              struct InellipseEllipse *out);

/**
 * Area of the ellipse with coefficients `{A, B, C, D, E, F}`.
 *
 * # Safety
 * `coefficients` must point to 6 readable doubles.
 */
enum InellipseStatus inellipse_conic_area(const double *coefficients, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INELLIPSE_H */
