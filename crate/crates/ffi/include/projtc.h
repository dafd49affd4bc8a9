#ifndef PROJTC_H
#define PROJTC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ProjtcStatus {
  PROJTC_STATUS_OK = 0,
  PROJTC_STATUS_NULL_POINTER = 1,
  PROJTC_STATUS_INVALID_UTF8 = 2,
  PROJTC_STATUS_PARSE_ERROR = 3,
  /**
   * Refused input such as a bundle above the dimension cap.
   */
  PROJTC_STATUS_INVALID_INPUT = 4,
  PROJTC_STATUS_INVARIANT_VIOLATION = 5,
  PROJTC_STATUS_PANIC = 6,
} ProjtcStatus;

/**
 * Result of running the engine on a spec.
 */
typedef struct ProjtcReport ProjtcReport;

/**
 * Parsed bundle spec.
 */
typedef struct ProjtcSpec ProjtcSpec;

typedef struct ProjtcInterval {
  uint32_t lower;
  /**
   * Meaningful only when `has_upper` is set.
   */
  uint32_t upper;
  bool has_upper;
  bool exact;
} ProjtcInterval;

typedef struct ProjtcHeights {
  uint32_t v_l;
  uint32_t v_r;
  uint32_t v_sum;
} ProjtcHeights;

/**
 * Parses spec-file text into a new handle stored in `*out`.
 *
 * # Safety
 * `text` must be NULL or a NUL-terminated string; `out` must be NULL or
 * valid for writes.
 */
enum ProjtcStatus projtc_spec_parse(const char *text, struct ProjtcSpec **out);

/**
 * # Safety
 * `spec` must be NULL or a handle from [`projtc_spec_parse`] not yet freed.
 */
void projtc_spec_free(struct ProjtcSpec *spec);

/**
 * Rank of the bundle, or 0 for NULL.
 *
 * # Safety
 * `spec` must be NULL or a live spec handle.
 */
uint32_t projtc_spec_rank(const struct ProjtcSpec *spec);

/**
 * Runs the engine. With `all_checks` every applicable check runs, otherwise
 * only those the spec requests. A zero `max_dim` selects the default cap.
 * Failed checks still produce a report; see [`projtc_report_failed_checks`].
 *
 * # Safety
 * `spec` must be NULL or a live spec handle; `out` must be NULL or valid
 * for writes.
 */
enum ProjtcStatus projtc_compute(const struct ProjtcSpec *spec,
                                 uint32_t max_dim,
                                 bool all_checks,
                                 struct ProjtcReport **out);

/**
 * # Safety
 * `report` must be NULL or a handle from [`projtc_compute`] not yet freed.
 */
void projtc_report_free(struct ProjtcReport *report);

/**
 * # Safety
 * `report` must be NULL or a live report handle; `out` NULL or writable.
 */
enum ProjtcStatus projtc_report_interval(const struct ProjtcReport *report,
                                         struct ProjtcInterval *out);

/**
 * Writes the enhancement heights and returns true; returns false for rank
 * one bundles, which have no enhancements.
 *
 * # Safety
 * `report` must be NULL or a live report handle; `out` NULL or writable.
 */
bool projtc_report_heights(const struct ProjtcReport *report, struct ProjtcHeights *out);

/**
 * # Safety
 * `report` must be NULL or a live report handle.
 */
uint32_t projtc_report_failed_checks(const struct ProjtcReport *report);

/**
 * The flat JSON report as a new string, released with [`projtc_string_free`].
 *
 * # Safety
 * `report` must be NULL or a live report handle; `out` NULL or writable.
 */
enum ProjtcStatus projtc_report_json(const struct ProjtcReport *report, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void projtc_string_free(char *s);

/**
 * Message of the last failure on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *projtc_last_error(void);

/**
 * 1-based line and column of the last parse failure on this thread.
 *
 * # Safety
 * `line` and `column` must be NULL or valid for writes.
 */
bool projtc_last_error_location(size_t *line, size_t *column);

#endif  /* PROJTC_H */
