#ifndef TORUSMD_H
#define TORUSMD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TORUSMD_API __declspec(dllexport)
#else
#define TORUSMD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. TORUSMD_OK and TORUSMD_VERIFICATION_FAILED carry a payload;
   every other code leaves *out NULL and sets the thread-local last error. */
typedef enum torusmd_status {
    TORUSMD_OK = 0,
    TORUSMD_VERIFICATION_FAILED = 1,
    TORUSMD_INVALID_INPUT = 2,
    TORUSMD_DETERMINANT_ERROR = 3,
    TORUSMD_NOT_SOL_ERROR = 4,
    TORUSMD_DEGENERATE_BUNDLE = 5,
    TORUSMD_ORDER_MISMATCH = 6,
    TORUSMD_OVERFLOW = 7,
    TORUSMD_NON_RATIONAL_TWIST = 8,
    TORUSMD_INTERNAL_INCONSISTENCY = 9,
    TORUSMD_BIJECTION_FAILURE = 10,
    TORUSMD_OUT_OF_MEMORY = 11
} torusmd_status;

typedef enum torusmd_format {
    TORUSMD_FORMAT_JSON = 0,
    TORUSMD_FORMAT_CSV = 1,
    TORUSMD_FORMAT_LATEX = 2,
    TORUSMD_FORMAT_PRETTY = 3
} torusmd_format;

/* A validated SOL monodromy. */
typedef struct torusmd_bundle torusmd_bundle;

typedef struct torusmd_options {
    torusmd_format format;
    int epsilon;              /* +1 or -1 */
    const char* generated_at; /* optional metadata timestamp; NULL omits the block */
} torusmd_options;

/* Defaults: JSON, epsilon +1, no metadata. */
TORUSMD_API void torusmd_options_init(torusmd_options* opts);

TORUSMD_API torusmd_status torusmd_bundle_create(int64_t a, int64_t b, int64_t c, int64_t d, torusmd_bundle** out);
TORUSMD_API void torusmd_bundle_free(torusmd_bundle* bundle);
/* Writes the order N of the finite group; 1 means the bundle is degenerate. */
TORUSMD_API torusmd_status torusmd_bundle_order(const torusmd_bundle* bundle, int64_t* out);

/* Each *_to_string call allocates *out; release it with torusmd_string_free. */
TORUSMD_API torusmd_status torusmd_analyze(const torusmd_bundle* bundle, const torusmd_options* opts, char** out);
/* Returns TORUSMD_VERIFICATION_FAILED, with the report in *out, if any check fails. */
TORUSMD_API torusmd_status torusmd_verify(const torusmd_bundle* bundle, const torusmd_options* opts, char** out);
TORUSMD_API torusmd_status torusmd_oracle(const torusmd_bundle* bundle, const torusmd_options* opts, char** out);
/* Conjugation check against B A B^-1; B must have determinant +1 or -1. */
TORUSMD_API torusmd_status torusmd_conjugate(const torusmd_bundle* bundle, int64_t ba, int64_t bb, int64_t bc,
                                             int64_t bd, const torusmd_options* opts, char** out);

/* Streams one chunk per callback call, in corpus order: header, rows, aggregate.
   threads = 0 uses TORUSMD_THREADS or the hardware concurrency.
   Returns TORUSMD_VERIFICATION_FAILED if any row failed or errored. */
typedef void (*torusmd_sink)(const char* chunk, size_t len, void* user);
TORUSMD_API torusmd_status torusmd_batch(int64_t entry_bound, int64_t trace_range, int threads,
                                         const torusmd_options* opts, torusmd_sink sink, void* user);
TORUSMD_API torusmd_status torusmd_table(int64_t entry_bound, int64_t trace_range, int threads,
                                         const torusmd_options* opts, char** out);

/* Machine-readable error object for the last failure on this thread. */
TORUSMD_API torusmd_status torusmd_error_json(char** out);

TORUSMD_API void torusmd_string_free(char* s);
/* Message of the last failure on this thread; "" if none. Valid until the next call. */
TORUSMD_API const char* torusmd_last_error(void);
TORUSMD_API const char* torusmd_status_name(torusmd_status status);
TORUSMD_API const char* torusmd_version(void);
TORUSMD_API int torusmd_schema_version(void);

#ifdef __cplusplus
}
#endif

#endif
