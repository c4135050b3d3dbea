#ifndef SASAKI_H
#define SASAKI_H

#include <stddef.h>
#include <stdint.h>

// Result of every fallible call.
typedef enum SasakiStatus {
  SASAKI_STATUS_OK = 0,
  // Null pointer, bad UTF-8 or an undersized buffer.
  SASAKI_STATUS_INVALID_ARGUMENT = 1,
  // The library rejected the input data.
  SASAKI_STATUS_INVALID_INPUT = 2,
  // A solver failed to converge or hit an internal inconsistency.
  SASAKI_STATUS_SOLVER_FAILURE = 3,
  // A Rust panic was caught at the boundary.
  SASAKI_STATUS_PANIC = 4,
} SasakiStatus;

// Opaque handle to a validated join.
typedef struct SasakiJoin SasakiJoin;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer is
// valid until the next library call on the same thread.
const char *sasaki_last_error(void);

// Library version as a static string.
const char *sasaki_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void sasaki_string_free(char *s);

// Validates a join over a preset base (`"CP1"`, `"CP^2"`, ...) and stores
// a new handle in `*out`. Weights may be given in either order.
//
// # Safety
// `base` must be a NUL-terminated string and `out` a writable pointer.
enum SasakiStatus sasaki_join_new(const char *base,
                                  uint64_t l1,
                                  uint64_t l2,
                                  uint64_t w1,
                                  uint64_t w2,
                                  struct SasakiJoin **out);

// Releases a join handle. Null is ignored.
//
// # Safety
// `j` must come from [`sasaki_join_new`] and not have been freed already.
void sasaki_join_free(struct SasakiJoin *j);

// Canonical weights, with `*w1 >= *w2`.
//
// # Safety
// `j` must be a live handle; `w1` and `w2` writable pointers.
enum SasakiStatus sasaki_join_weights(const struct SasakiJoin *j, uint64_t *w1, uint64_t *w2);

// Join data and contact invariants as a JSON object.
//
// # Safety
// `j` must be a live handle and `out` a writable pointer.
enum SasakiStatus sasaki_join_json(const struct SasakiJoin *j, char **out);

// Number of constant scalar curvature rays, including the product ray
// when the weights are equal.
//
// # Safety
// `j` must be a live handle and `count` a writable pointer.
enum SasakiStatus sasaki_csc_ray_count(const struct SasakiJoin *j, size_t *count);

// Slopes `b` of the constant scalar curvature rays, ascending, as `f64`.
//
// Writes the ray count to `*len`. When `cap` is smaller than the count
// nothing is copied and `InvalidArgument` is returned, so a caller can
// query the size with `cap = 0`.
//
// # Safety
// `j` must be a live handle, `len` writable and `buf` valid for `cap`
// writes (it may be null when `cap` is 0).
enum SasakiStatus sasaki_csc_ray_slopes(const struct SasakiJoin *j,
                                        double *buf,
                                        size_t cap,
                                        size_t *len);

// Constant scalar curvature rays as a JSON object with `ray_count` and
// `rays`; slopes are exact where they are rational.
//
// # Safety
// `j` must be a live handle and `out` a writable pointer.
enum SasakiStatus sasaki_csc_rays_json(const struct SasakiJoin *j, char **out);

// The Sasaki-Einstein ray as a JSON object, or `null` when none exists
// in the cone.
//
// # Safety
// `j` must be a live handle and `out` a writable pointer.
enum SasakiStatus sasaki_se_ray_json(const struct SasakiJoin *j, char **out);

// Runs a command line (without the program name) and stores its JSON
// report in `*out`. `*exit_code` receives the code the `sasaki` binary
// would return. Input errors still produce a report; the status is `Ok`
// whenever a report was written.
//
// # Safety
// `argv` must point to `argc` NUL-terminated strings; `out` and
// `exit_code` must be writable.
enum SasakiStatus sasaki_run_json(size_t argc,
                                  const char *const *argv,
                                  char **out,
                                  int32_t *exit_code);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SASAKI_H */
