/* ifacelint — interface design anomaly analyzer, C API.
 *
 * The shared library wraps the C++ core behind opaque handles and status
 * codes so that tools (including the bundled CLI) can link against a stable
 * C surface. All functions are thread-compatible: distinct handles may be
 * used from distinct threads; one handle must not be shared without
 * external synchronization. Error details for the calling thread are
 * available via iflint_last_error().
 */
#ifndef IFACELINT_H
#define IFACELINT_H

#include <stddef.h>

#if defined(_WIN32)
#define IFLINT_API __declspec(dllexport)
#else
#define IFLINT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum iflint_status {
    IFLINT_OK = 0,
    IFLINT_ERROR_USAGE = 1,          /* bad arguments to an API call */
    IFLINT_ERROR_INPUT = 2,          /* unreadable or unusable input */
    IFLINT_ERROR_MALFORMED = 3,      /* unparseable source file */
    IFLINT_ERROR_ENCODING = 4,       /* input is not valid UTF-8 */
    IFLINT_ERROR_SCHEMA = 5,         /* facts record violates the schema */
    IFLINT_ERROR_CYCLIC_HIERARCHY = 6,
    IFLINT_ERROR_DUPLICATE_TYPE = 7,
    IFLINT_ERROR_UNKNOWN_TYPE = 8,
    IFLINT_ERROR_INTERNAL = 9
} iflint_status;

typedef struct iflint_options iflint_options;
typedef struct iflint_result iflint_result;

IFLINT_API const char* iflint_version(void);
IFLINT_API const char* iflint_status_name(iflint_status status);

/* Detail message for the last failing call on this thread ("" if none). */
IFLINT_API const char* iflint_last_error(void);

/* ---- analysis options ------------------------------------------------- */

IFLINT_API iflint_options* iflint_options_new(void);
IFLINT_API void iflint_options_free(iflint_options* options);

IFLINT_API void iflint_options_set_exclude_tests(iflint_options* options, int on);
IFLINT_API void iflint_options_set_exclude_markers(iflint_options* options, int on);
IFLINT_API void iflint_options_set_min_implementations(iflint_options* options, int n);
IFLINT_API void iflint_options_set_library_mode(iflint_options* options, int on);

/* mode: "pearson", "spearman" or "both" */
IFLINT_API iflint_status iflint_options_set_correlation(iflint_options* options,
                                                        const char* mode);
/* key: "rum", "rdm", "size", "dm", "um", "iuc" or "name" */
IFLINT_API iflint_status iflint_options_set_sort_key(iflint_options* options,
                                                     const char* key);

/* ---- running an analysis ---------------------------------------------- */

/* Analyze every .java file under `dir`, recursively. */
IFLINT_API iflint_status iflint_analyze_source(const char* dir,
                                               const iflint_options* options,
                                               iflint_result** out_result);

/* Analyze a facts file (one JSON record per line). */
IFLINT_API iflint_status iflint_analyze_facts(const char* file,
                                              const iflint_options* options,
                                              iflint_result** out_result);

IFLINT_API void iflint_result_free(iflint_result* result);

/* ---- consuming a result ------------------------------------------------ */

/* format: "text", "csv" or "machine". *out_document is heap-allocated and
 * must be released with iflint_string_free. */
IFLINT_API iflint_status iflint_result_render(const iflint_result* result,
                                              const char* format,
                                              char** out_document);
IFLINT_API void iflint_string_free(char* text);

/* System metric by name: "interfaces", "total_interface_methods", "sdm",
 * "sum", "snum", "distinct_dup_signatures", "reim", "nulc", "system_loc",
 * "shared_impl_count", "rsdm", "rsum", "rsnum", "rreim", "rnulc",
 * "shared_impl_ratio", "suggestions". */
IFLINT_API iflint_status iflint_result_system_metric(const iflint_result* result,
                                                     const char* name,
                                                     double* out_value);

/* CI gate: metric in {rsdm,rsum,rsnum,rreim} compares system-wide; metric in
 * {rum,rdm} triggers when any interface reaches the threshold. *out_flag is
 * 1 when the threshold is met or exceeded. */
IFLINT_API iflint_status iflint_result_threshold_exceeded(const iflint_result* result,
                                                          const char* metric,
                                                          double threshold,
                                                          int* out_flag);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* IFACELINT_H */
