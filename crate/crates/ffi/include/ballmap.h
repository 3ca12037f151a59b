#ifndef BALLMAP_H
#define BALLMAP_H

#include <stddef.h>
#include <stdint.h>

typedef enum BallmapStatus {
  BALLMAP_STATUS_OK = 0,
  /**
   * The answer is a mathematical negative (not proper, not a member, ...).
   */
  BALLMAP_STATUS_NEGATIVE = 1,
  BALLMAP_STATUS_NULL_POINTER = 2,
  BALLMAP_STATUS_INVALID_UTF8 = 3,
  BALLMAP_STATUS_PARSE = 4,
  BALLMAP_STATUS_INVALID_ARGUMENT = 5,
  BALLMAP_STATUS_UNSUPPORTED = 6,
  BALLMAP_STATUS_CAP_EXCEEDED = 7,
  BALLMAP_STATUS_INTERNAL = 8,
} BallmapStatus;

/**
 * Automorphism of the unit ball.
 */
typedef struct BallmapAutomorphism BallmapAutomorphism;

/**
 * Finite unitary group, closed under multiplication.
 */
typedef struct BallmapGroup BallmapGroup;

/**
 * Polynomial map with exact coefficients.
 */
typedef struct BallmapMap BallmapMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message on this thread, or NULL. Valid until the next
 * failing call on the same thread.
 */
const char *ballmap_last_error(void);

/**
 * Library version as a static string.
 */
const char *ballmap_version(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void ballmap_string_free(char *s);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum BallmapStatus ballmap_map_from_json(const char *json, struct BallmapMap **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum BallmapStatus ballmap_map_tensor_power(size_t n, uint32_t m, struct BallmapMap **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum BallmapStatus ballmap_map_whitney(struct BallmapMap **out);

/**
 * # Safety
 * `map` must be a live handle; `out` must be writable.
 */
enum BallmapStatus ballmap_map_to_json(const struct BallmapMap *map, char **out);

/**
 * # Safety
 * `map` must be NULL or a handle from this library, not yet freed.
 */
void ballmap_map_free(struct BallmapMap *map);

/**
 * Writes 1 to `proper` when the map sends the sphere into the sphere.
 *
 * # Safety
 * `map` must be a live handle; `proper` must be writable.
 */
enum BallmapStatus ballmap_map_is_proper(const struct BallmapMap *map, int *proper);

/**
 * Number of free parameters `k` of `H_f ≅ U(k)`.
 *
 * # Safety
 * `map` must be a live handle; `k` must be writable.
 */
enum BallmapStatus ballmap_map_hf_dimension(const struct BallmapMap *map, size_t *k);

/**
 * Diagonal invariance group as torus JSON. With `fixing` nonzero, the
 * diagonal fixing group instead.
 *
 * # Safety
 * `map` must be a live handle; `out` must be writable.
 */
enum BallmapStatus ballmap_map_torus_json(const struct BallmapMap *map, int fixing, char **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum BallmapStatus ballmap_automorphism_from_json(const char *json,
                                                  struct BallmapAutomorphism **out);

/**
 * # Safety
 * `a` must be NULL or a handle from this library, not yet freed.
 */
void ballmap_automorphism_free(struct BallmapAutomorphism *a);

/**
 * Decides `γ ∈ Γ_f`. Returns `Negative` when it is not a member; the
 * report JSON is written in both cases when `report` is not NULL.
 *
 * # Safety
 * Handles must be live; `report` must be NULL or writable.
 */
enum BallmapStatus ballmap_gamma_membership(const struct BallmapMap *map,
                                            const struct BallmapAutomorphism *gamma,
                                            char **report);

/**
 * Closes the generators of a group file under multiplication.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum BallmapStatus ballmap_group_from_json(const char *json, size_t cap, struct BallmapGroup **out);

/**
 * # Safety
 * `g` must be a live handle.
 */
size_t ballmap_group_order(const struct BallmapGroup *g);

/**
 * # Safety
 * `g` must be NULL or a handle from this library, not yet freed.
 */
void ballmap_group_free(struct BallmapGroup *g);

/**
 * Classification JSON of a cyclic group; `Negative` for `NotInList`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum BallmapStatus ballmap_classify_kernel(const struct BallmapGroup *g, char **out);

/**
 * Runs one command-line invocation (`argv[0]` is the program name) and
 * returns its exit code; the JSON report is written to `report`.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; `report` must be writable.
 */
int ballmap_run(size_t argc, const char *const *argv, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BALLMAP_H */
