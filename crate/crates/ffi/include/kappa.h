#ifndef KAPPA_H
#define KAPPA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KappaStatus {
  KAPPA_STATUS_OK = 0,
  KAPPA_STATUS_NULL_ARGUMENT = 1,
  KAPPA_STATUS_INVALID_UTF8 = 2,
  KAPPA_STATUS_PARSE = 3,
  KAPPA_STATUS_CONFIG = 4,
  KAPPA_STATUS_SINGULAR_METRIC = 5,
  KAPPA_STATUS_NON_SYMMETRIC_METRIC = 6,
  KAPPA_STATUS_LIMIT = 7,
  KAPPA_STATUS_IO = 8,
  KAPPA_STATUS_INTERNAL = 9,
  KAPPA_STATUS_OUT_OF_RANGE = 10,
} KappaStatus;

// Run configuration under construction.
typedef struct KappaBuilder KappaBuilder;

// Result of a run.
typedef struct KappaReport KappaReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread. Valid until the
// next call into the library on the same thread.
const char *kappa_last_error(void);

// Empty builder; `metric` must be set before running.
struct KappaBuilder *kappa_builder_new(void);

// Builder from the text of a run specification.
//
// # Safety
// `spec` must be a NUL-terminated string and `out` a valid pointer.
enum KappaStatus kappa_builder_from_spec(const char *spec, struct KappaBuilder **out);

// Sets one key, replacing any value from the specification.
//
// # Safety
// `b` must come from this library; `key` and `value` must be
// NUL-terminated strings.
enum KappaStatus kappa_builder_set(struct KappaBuilder *b, const char *key, const char *value);

// # Safety
// `b` must come from this library or be null.
void kappa_builder_free(struct KappaBuilder *b);

// Validates the configuration and runs the selected layers. A run whose
// checks fail still returns `KAPPA_STATUS_OK`; inspect the report.
//
// # Safety
// `b` must come from this library and `out` must be a valid pointer.
enum KappaStatus kappa_run(const struct KappaBuilder *b, struct KappaReport **out);

// 1 if every check passed, 0 otherwise or for a null report.
//
// # Safety
// `r` must come from this library or be null.
int32_t kappa_report_passed(const struct KappaReport *r);

// Process exit code the command-line tool would use: 0 pass, 1 failure.
//
// # Safety
// `r` must come from this library or be null.
int32_t kappa_report_exit_code(const struct KappaReport *r);

// # Safety
// `r` must come from this library or be null.
size_t kappa_report_check_count(const struct KappaReport *r);

// Name and status (0 pass, 1 fail, 2 skipped) of check `index`. The name
// pointer lives as long as the report.
//
// # Safety
// `r` must come from this library; `name` and `status` must be valid
// pointers.
enum KappaStatus kappa_report_check(const struct KappaReport *r,
                                    size_t index,
                                    const char **name,
                                    int32_t *status);

// Full JSON report, header included. Lives as long as the report.
//
// # Safety
// `r` must come from this library or be null.
const char *kappa_report_json(const struct KappaReport *r);

// Deterministic report body only. Lives as long as the report.
//
// # Safety
// `r` must come from this library or be null.
const char *kappa_report_body_json(const struct KappaReport *r);

// # Safety
// `r` must come from this library or be null.
void kappa_report_free(struct KappaReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KAPPA_H */
