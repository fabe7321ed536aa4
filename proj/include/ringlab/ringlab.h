/* ringlab C interface.
 *
 * Handles are opaque. Functions returning ringlab_status leave a
 * thread-local message retrievable with ringlab_last_error() on failure.
 * Strings returned through char** are owned by the caller and released with
 * ringlab_string_free(); const char* results are owned by the handle (or
 * the library) and stay valid until the handle is freed.
 */
#ifndef RINGLAB_H
#define RINGLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RINGLAB_BUILDING)
#    define RINGLAB_API __declspec(dllexport)
#  else
#    define RINGLAB_API __declspec(dllimport)
#  endif
#else
#  define RINGLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ringlab_status {
  RINGLAB_OK = 0,
  RINGLAB_ERR_INVALID_ARGUMENT = 1,
  RINGLAB_ERR_PRECONDITION = 2,
  RINGLAB_ERR_UNDECIDED = 3,
  RINGLAB_ERR_SCHEMA = 4,
  RINGLAB_ERR_IO = 5,
  RINGLAB_ERR_INTERNAL = 6,
  RINGLAB_ERR_NULL_ARGUMENT = 7
} ringlab_status;

typedef struct ringlab_scenario ringlab_scenario;
typedef struct ringlab_report ringlab_report;

RINGLAB_API const char* ringlab_version(void);
RINGLAB_API const char* ringlab_report_schema_version(void);
RINGLAB_API const char* ringlab_status_string(ringlab_status status);
/* Message of the last failed call on this thread ("" if none). */
RINGLAB_API const char* ringlab_last_error(void);
/* Worker cap: RINGLAB_THREADS if set and positive, else hardware threads. */
RINGLAB_API unsigned ringlab_thread_cap(void);
RINGLAB_API void ringlab_string_free(char* s);

/* Scenarios. Validation happens on creation; defaults are filled in. */
RINGLAB_API ringlab_status ringlab_scenario_from_json(const char* json, ringlab_scenario** out);
RINGLAB_API ringlab_status ringlab_scenario_from_file(const char* path, ringlab_scenario** out);
RINGLAB_API ringlab_status ringlab_scenario_from_catalog(const char* name, ringlab_scenario** out);
RINGLAB_API ringlab_status ringlab_scenario_set_seed(ringlab_scenario* s, uint64_t seed);
RINGLAB_API const char* ringlab_scenario_kind(const ringlab_scenario* s);
RINGLAB_API const char* ringlab_scenario_name(const ringlab_scenario* s);
/* The effective scenario as JSON, defaults included. */
RINGLAB_API const char* ringlab_scenario_json(const ringlab_scenario* s);
RINGLAB_API void ringlab_scenario_free(ringlab_scenario* s);

/* RINGLAB_OK if the document is a valid scenario. Otherwise
 * RINGLAB_ERR_SCHEMA and, if issues is non-null, one "path: message" line
 * per problem. */
RINGLAB_API ringlab_status ringlab_validate_json(const char* json, char** issues);

/* Runs a scenario. When out_dir is non-null, report.json and the trace CSV
 * files are written there. Scenario failures (outcome falsified or
 * undecided) still return RINGLAB_OK; inspect the report. */
RINGLAB_API ringlab_status ringlab_run(const ringlab_scenario* s, const char* out_dir, ringlab_report** out);
RINGLAB_API const char* ringlab_report_json(const ringlab_report* r);
/* "pass", "falsified" or "undecided". */
RINGLAB_API const char* ringlab_report_outcome(const ringlab_report* r);
/* 0 outcome as expected (or pass), 2 falsified, 3 undecided, 4 pass
 * where the scenario expected otherwise. */
RINGLAB_API int ringlab_report_exit_code(const ringlab_report* r);
RINGLAB_API void ringlab_report_free(ringlab_report* r);

/* Bundled scenarios. Out-of-range indices give "". */
RINGLAB_API size_t ringlab_catalog_size(void);
RINGLAB_API const char* ringlab_catalog_name(size_t i);
RINGLAB_API const char* ringlab_catalog_description(size_t i);
RINGLAB_API ringlab_status ringlab_catalog_json(size_t i, char** out);

/* Direct helpers. p is 1, 2, or 0 for infinity; epsilon is "a/b" in (0, 1].
 * A bad epsilon is reported as RINGLAB_ERR_SCHEMA with the field path. */
RINGLAB_API ringlab_status ringlab_counterexample_json(const char* epsilon, int p, char** out);
/* Least n with H_n > threshold ("a/b"). */
RINGLAB_API ringlab_status ringlab_harmonic_threshold(const char* threshold, uint64_t* n);

#ifdef __cplusplus
}
#endif

#endif /* RINGLAB_H */
