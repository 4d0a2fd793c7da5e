#ifndef SQUARETOUR_H
#define SQUARETOUR_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SqtStatus {
  SQT_STATUS_OK = 0,
  SQT_STATUS_NULL_POINTER = 1,
  SQT_STATUS_INVALID_INPUT = 2,
  SQT_STATUS_TOO_LARGE = 3,
  SQT_STATUS_NOT_SQUARE = 4,
  SQT_STATUS_BOUND_VIOLATED = 5,
  SQT_STATUS_BUFFER_TOO_SMALL = 6,
  SQT_STATUS_INTERNAL = 7,
} SqtStatus;

typedef enum SqtPointClass {
  SQT_POINT_CLASS_SQUARE = 0,
  SQT_POINT_CLASS_BOYD_CARR = 1,
  SQT_POINT_CLASS_CARR_VEMPALA = 2,
  SQT_POINT_CLASS_HALF_INTEGER = 3,
  /**
   * Fails a degree or cut constraint.
   */
  SQT_POINT_CLASS_INVALID = 4,
} SqtPointClass;

typedef struct SqtBts SqtBts;

/**
 * A half-integer point with one cost per support edge.
 */
typedef struct SqtPoint SqtPoint;

typedef struct SqtTourReport SqtTourReport;

/**
 * Costs of a tour run. `c_x2` is twice `c·x`.
 */
typedef struct SqtTourCosts {
  int64_t c_h;
  int64_t c_j;
  int64_t c_x2;
  int64_t final_cost;
  bool bound_holds;
} SqtTourCosts;

/**
 * One end of an edge: `end` is 0 or 1.
 */
typedef struct SqtDart {
  size_t edge;
  uint8_t end;
} SqtDart;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or NULL. The pointer
 * stays valid until the next failing call on this thread.
 */
const char *sqt_last_error(void);

/**
 * Parses a `POINT` instance from NUL-terminated text.
 *
 * # Safety
 * `text_ptr` must be NULL or a NUL-terminated string; `out` must be NULL or
 * writable.
 */
enum SqtStatus sqt_point_parse(const char *text_ptr, struct SqtPoint **out);

/**
 * The `k`-donut with its canonical costs.
 *
 * # Safety
 * `out` must be NULL or writable.
 */
enum SqtStatus sqt_point_donut(size_t k, struct SqtPoint **out);

/**
 * Random square point with random costs in `[0, max_cost]`.
 *
 * # Safety
 * `out` must be NULL or writable.
 */
enum SqtStatus sqt_point_random_square(size_t squares,
                                       size_t max_path,
                                       int64_t max_cost,
                                       uint64_t seed,
                                       struct SqtPoint **out);

/**
 * # Safety
 * `p` must be NULL or a handle from this library not yet freed.
 */
void sqt_point_free(struct SqtPoint *p);

/**
 * Node count of the point, 0 for NULL.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
size_t sqt_point_node_count(const struct SqtPoint *p);

/**
 * Support edge count of the point, 0 for NULL.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
size_t sqt_point_edge_count(const struct SqtPoint *p);

/**
 * Twice `c·x`.
 *
 * # Safety
 * `p` must be NULL or a live handle; `out` NULL or writable.
 */
enum SqtStatus sqt_point_cost_x2(const struct SqtPoint *p, int64_t *out);

/**
 * Class of the point; [`SqtPointClass::Invalid`] when a subtour constraint
 * fails (the witness is left in [`sqt_last_error`]).
 *
 * # Safety
 * `p` must be NULL or a live handle; `out` NULL or writable.
 */
enum SqtStatus sqt_point_classify(const struct SqtPoint *p, enum SqtPointClass *out);

/**
 * Writes the instance text (without a NUL terminator) into `buf`.
 *
 * # Safety
 * `p` must be NULL or a live handle; `buf` must hold `cap` bytes;
 * `needed` NULL or writable.
 */
enum SqtStatus sqt_point_serialize(const struct SqtPoint *p, char *buf, size_t cap, size_t *needed);

/**
 * Optimal tour cost on the metric closure of the support (at most 24 nodes).
 *
 * # Safety
 * `p` must be NULL or a live handle; `out` NULL or writable.
 */
enum SqtStatus sqt_point_opt(const struct SqtPoint *p, int64_t *out);

/**
 * Runs the tour pipeline on a square point.
 *
 * # Safety
 * `p` must be NULL or a live handle; `out` NULL or writable.
 */
enum SqtStatus sqt_tour_run(const struct SqtPoint *p, struct SqtTourReport **out);

/**
 * # Safety
 * `r` must be NULL or a live handle; `out` NULL or writable.
 */
enum SqtStatus sqt_tour_costs(const struct SqtTourReport *r, struct SqtTourCosts *out);

/**
 * Node order of the shortcut Hamiltonian cycle.
 *
 * # Safety
 * `r` must be NULL or a live handle; `buf` must hold `cap` entries;
 * `needed` NULL or writable.
 */
enum SqtStatus sqt_tour_cycle(const struct SqtTourReport *r,
                              size_t *buf,
                              size_t cap,
                              size_t *needed);

/**
 * # Safety
 * `r` must be NULL or a handle from this library not yet freed.
 */
void sqt_tour_free(struct SqtTourReport *r);

/**
 * Parses a `BTS` instance from NUL-terminated text.
 *
 * # Safety
 * `text_ptr` must be NULL or a NUL-terminated string; `out` NULL or writable.
 */
enum SqtStatus sqt_bts_parse(const char *text_ptr, struct SqtBts **out);

/**
 * # Safety
 * `b` must be NULL or a live handle; `buf` must hold `cap` bytes;
 * `needed` NULL or writable.
 */
enum SqtStatus sqt_bts_serialize(const struct SqtBts *b, char *buf, size_t cap, size_t *needed);

/**
 * Eulerian trail avoiding the forbidden bitransitions, as `2m` darts: the
 * dart where each edge is entered followed by its other end.
 *
 * # Safety
 * `b` must be NULL or a live handle; `buf` must hold `cap` entries;
 * `needed` NULL or writable.
 */
enum SqtStatus sqt_bts_find_trail(const struct SqtBts *b,
                                  struct SqtDart *buf,
                                  size_t cap,
                                  size_t *needed);

/**
 * # Safety
 * `b` must be NULL or a handle from this library not yet freed.
 */
void sqt_bts_free(struct SqtBts *b);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SQUARETOUR_H */
