#ifndef ORIENT4_H
#define ORIENT4_H

/* Generated by cbindgen from orient4-ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by all functions.
 */
typedef enum O4Status {
  O4_STATUS_OK = 0,
  O4_STATUS_NULL_ARGUMENT = 1,
  O4_STATUS_PARSE = 2,
  O4_STATUS_INVALID_SPEC = 3,
  O4_STATUS_REFUSED = 4,
  O4_STATUS_USAGE = 5,
  O4_STATUS_INTERNAL = 6,
  O4_STATUS_PANIC = 7,
} O4Status;

typedef enum O4Verdict {
  O4_VERDICT_C0 = 0,
  O4_VERDICT_C1 = 1,
  O4_VERDICT_UNKNOWN_GAP = 2,
} O4Verdict;

/**
 * A diameter-4 orientation produced by [`o4_construct`].
 */
typedef struct O4Orientation O4Orientation;

/**
 * A validated tree specification.
 */
typedef struct O4Spec O4Spec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *o4_last_error(void);

/**
 * Parses and validates a JSON tree spec.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum O4Status o4_spec_from_json(const char *json, struct O4Spec **out);

/**
 * # Safety
 * `spec` must come from [`o4_spec_from_json`] and not be used afterwards.
 */
void o4_spec_free(struct O4Spec *spec);

/**
 * Classifies a spec. `orientation_number` receives 4, 5, or 0 for the
 * open case.
 *
 * # Safety
 * `spec` must be a live handle; the out pointers must be writable.
 */
enum O4Status o4_classify(const struct O4Spec *spec,
                          enum O4Verdict *verdict,
                          uint32_t *orientation_number);

/**
 * Full classification report as JSON.
 *
 * # Safety
 * `spec` must be a live handle and `out` writable.
 */
enum O4Status o4_classify_json(const struct O4Spec *spec, char **out);

/**
 * Builds a diameter-4 orientation. C1 and open instances give
 * `O4_STATUS_REFUSED`.
 *
 * # Safety
 * `spec` must be a live handle and `out` writable.
 */
enum O4Status o4_construct(const struct O4Spec *spec, struct O4Orientation **out);

/**
 * # Safety
 * `d` must come from [`o4_construct`] and not be used afterwards.
 */
void o4_orientation_free(struct O4Orientation *d);

/**
 * Diameter of the orientation, or 0 when it is not strongly connected.
 *
 * # Safety
 * `d` must be a live handle or null (which gives 0).
 */
uint32_t o4_orientation_diameter(const struct O4Orientation *d);

/**
 * Case identifier of the construction, e.g. `P39`. Borrowed from the
 * handle.
 *
 * # Safety
 * `d` must be a live handle or null (which gives null).
 */
const char *o4_orientation_case(const struct O4Orientation *d);

/**
 * Arcs as text, one `u -> v` per line.
 *
 * # Safety
 * `d` must be a live handle and `out` writable.
 */
enum O4Status o4_orientation_edge_list(const struct O4Orientation *d, char **out);

/**
 * Exhaustive orientation number; refuses above `max_edges` edges.
 *
 * # Safety
 * `spec` must be a live handle and `out` writable.
 */
enum O4Status o4_oracle(const struct O4Spec *spec, size_t max_edges, uint32_t *out);

/**
 * `κ_{n,r}(m)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum O4Status o4_kappa(uint32_t n, uint32_t r, uint64_t m, int64_t *out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void o4_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORIENT4_H */
