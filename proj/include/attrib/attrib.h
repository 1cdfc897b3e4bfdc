#ifndef ATTRIB_ATTRIB_H
#define ATTRIB_ATTRIB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ATTRIB_BUILDING_LIBRARY)
#    define ATTRIB_API __declspec(dllexport)
#  else
#    define ATTRIB_API __declspec(dllimport)
#  endif
#else
#  define ATTRIB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum attrib_status {
  ATTRIB_OK = 0,
  ATTRIB_E_INPUT = 1,        /* bad argument, unknown name, malformed flag value */
  ATTRIB_E_PARSE = 2,        /* unreadable or undecodable document */
  ATTRIB_E_VALIDATION = 3,   /* well-formed input violating a semantic rule */
  ATTRIB_E_IO = 4,
  ATTRIB_E_INTERNAL = 5,
  ATTRIB_E_CHECK_FAILED = 6  /* run completed, a verified property does not hold */
} attrib_status;

typedef struct attrib_family attrib_family;
typedef struct attrib_snapshot attrib_snapshot;
typedef struct attrib_artifacts attrib_artifacts;

ATTRIB_API const char* attrib_version(void);
/* Message for the last failing call on this thread; "" if none. */
ATTRIB_API const char* attrib_last_error(void);
ATTRIB_API const char* attrib_status_name(attrib_status status);

ATTRIB_API attrib_status attrib_family_load(const char* path, attrib_family** out);
ATTRIB_API attrib_status attrib_family_parse(const char* json, attrib_family** out);
ATTRIB_API attrib_status attrib_family_unary_nested(size_t max_k, attrib_family** out);
ATTRIB_API void attrib_family_destroy(attrib_family* family);
ATTRIB_API size_t attrib_family_size(const attrib_family* family);
ATTRIB_API attrib_status attrib_family_find(const attrib_family* family, const char* name, size_t* index);
ATTRIB_API attrib_status attrib_family_contains(const attrib_family* family, size_t index, const char* s,
                                                int* result);

/* Run functions fill *out on ATTRIB_OK and on ATTRIB_E_CHECK_FAILED. */
ATTRIB_API attrib_status attrib_telltale_run(const attrib_family* family, attrib_artifacts** out);
ATTRIB_API attrib_status attrib_simulate(const attrib_family* family, const char* target, const char* learner,
                                         size_t horizon, int cumulative_schedule, attrib_artifacts** out);
/* mode: "nested" or "support"; max_k 0 picks the default family size
   (horizon + 1, capped at 256 for finite-class). */
ATTRIB_API attrib_status attrib_adversary(const char* mode, const char* learner, size_t horizon, size_t max_k,
                                          attrib_artifacts** out);
ATTRIB_API attrib_status attrib_problang_verify(size_t max_n, uint64_t seed, size_t trials, attrib_artifacts** out);

/* region_map_path may be NULL for the bundled mapping. */
ATTRIB_API attrib_status attrib_snapshot_ingest(const char* assets_path, const char* region_map_path,
                                                attrib_snapshot** out);
ATTRIB_API void attrib_snapshot_destroy(attrib_snapshot* snapshot);
ATTRIB_API attrib_status attrib_snapshot_counts(const attrib_snapshot* snapshot, size_t* models, size_t* datasets,
                                                size_t* warnings);

/* window: "YYYY-MM:YYYY-MM" or NULL for 2019-01:2025-01. */
ATTRIB_API attrib_status attrib_growth_run(const attrib_snapshot* snapshot, int k, const char* window,
                                           int strict_access, attrib_artifacts** out);
ATTRIB_API attrib_status attrib_report_all(const attrib_snapshot* snapshot, const char* window, int strict_access,
                                           attrib_artifacts** out);

typedef struct attrib_compute_params {
  double params_total;
  double tokens;
  double flops_per_param_token;
  double machine_flops_per_sec;
  double bytes_per_token;
  double io_bytes_per_sec;
} attrib_compute_params;

/* Reference machine, 1 FLOP per parameter per token, 4 bytes per token. */
ATTRIB_API void attrib_compute_defaults(attrib_compute_params* params);
ATTRIB_API attrib_status attrib_compute_preset(const char* name, attrib_artifacts** out);
ATTRIB_API attrib_status attrib_compute_custom(const attrib_compute_params* params, attrib_artifacts** out);

ATTRIB_API size_t attrib_artifacts_count(const attrib_artifacts* artifacts);
ATTRIB_API const char* attrib_artifacts_name(const attrib_artifacts* artifacts, size_t i);
ATTRIB_API const char* attrib_artifacts_content(const attrib_artifacts* artifacts, size_t i, size_t* length);
/* Index of the named artifact, or (size_t)-1. */
ATTRIB_API size_t attrib_artifacts_find(const attrib_artifacts* artifacts, const char* name);
/* Embeds a JSON provenance object into every artifact except summary.txt. */
ATTRIB_API attrib_status attrib_artifacts_stamp(attrib_artifacts* artifacts, const char* provenance_json);
ATTRIB_API void attrib_artifacts_destroy(attrib_artifacts* artifacts);

ATTRIB_API uint64_t attrib_fnv1a64(const void* data, size_t length);

#ifdef __cplusplus
}
#endif

#endif
