#ifndef HCMU_H
#define HCMU_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HcmuStatus {
  HCMU_STATUS_OK = 0,
  HCMU_STATUS_NULL_ARGUMENT = 1,
  HCMU_STATUS_INVALID_UTF8 = 2,
  HCMU_STATUS_PARSE_ERROR = 3,
  HCMU_STATUS_VALIDATION_ERROR = 4,
  HCMU_STATUS_INVALID_INPUT = 5,
  HCMU_STATUS_EMPTY_SPACE = 6,
  HCMU_STATUS_INADMISSIBLE = 7,
  HCMU_STATUS_INTERNAL = 8,
} HcmuStatus;

/**
 * Result of an existence check.
 */
typedef enum HcmuExistence {
  HCMU_EXISTENCE_EMPTY = 0,
  HCMU_EXISTENCE_CASE_A1 = 1,
  HCMU_EXISTENCE_CASE_A2 = 2,
  HCMU_EXISTENCE_CASE_A3 = 3,
  HCMU_EXISTENCE_CASE_B = 4,
  HCMU_EXISTENCE_FOOTBALL = 5,
} HcmuExistence;

/**
 * Opaque handle to a validated data set.
 */
typedef struct HcmuDataSet HcmuDataSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *hcmu_last_error(void);

/**
 * Parses and validates a JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HcmuStatus hcmu_dataset_from_json(const char *json, struct HcmuDataSet **out);

/**
 * Canonical JSON text; release with `hcmu_string_free`.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum HcmuStatus hcmu_dataset_to_json(const struct HcmuDataSet *d, char **out);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void hcmu_string_free(char *s);

/**
 * # Safety
 * `d` must come from this library or be null.
 */
void hcmu_dataset_free(struct HcmuDataSet *d);

/**
 * Genus and vertex, arc and face counts. Any output pointer may be null.
 *
 * # Safety
 * `d` must be a live handle; non-null outputs must be valid.
 */
enum HcmuStatus hcmu_dataset_counts(const struct HcmuDataSet *d,
                                    uint32_t *genus,
                                    size_t *vertices,
                                    size_t *arcs,
                                    size_t *faces);

/**
 * Existence for a genus and a comma-separated list of rational angles.
 *
 * # Safety
 * `angles` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HcmuStatus hcmu_check_existence(uint32_t genus, const char *angles, enum HcmuExistence *out);

/**
 * Surface with one saddle, `p` smooth maxima and `q` smooth minima.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HcmuStatus hcmu_build_one_cone(uint32_t genus,
                                    uint64_t p,
                                    uint64_t q,
                                    struct HcmuDataSet **out);

/**
 * Parameter count of the data set, checked against the dimension formula.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum HcmuStatus hcmu_dimension_crosscheck(const struct HcmuDataSet *d, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HCMU_H */
