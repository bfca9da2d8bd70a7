/* C interface to the soluble quotient engine.
 *
 * Objects are opaque handles released with their *_free function. Every
 * call returns a status code; on failure solquo_last_error() describes the
 * problem (thread-local, valid until the next call on the same thread).
 * Strings returned through char** are owned by the caller and released
 * with solquo_string_free. */

#ifndef SOLQUO_H
#define SOLQUO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SOLQUO_API __declspec(dllexport)
#else
#define SOLQUO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum solquo_status {
  SOLQUO_OK = 0,
  SOLQUO_ERR_PARSE = 1,
  SOLQUO_ERR_EPIMORPHISM = 2,
  SOLQUO_ERR_CEILING = 3,
  SOLQUO_ERR_INCONSISTENT = 4,
  SOLQUO_ERR_INVALID_PRESENTATION = 5,
  SOLQUO_ERR_ARGUMENT = 6,
  SOLQUO_ERR_INTERNAL = 7
} solquo_status;

typedef enum solquo_format { SOLQUO_TEXT = 0, SOLQUO_JSON = 1 } solquo_format;

typedef struct solquo_pc solquo_pc;
typedef struct solquo_fp solquo_fp;
typedef struct solquo_options solquo_options;
typedef struct solquo_result solquo_result;

typedef struct solquo_progress {
  uint32_t prime;
  uint32_t step;
  size_t module_rank;
  size_t dimension;
  const char* order; /* decimal */
  double seconds;
} solquo_progress;

typedef void (*solquo_progress_fn)(const solquo_progress* info, void* user);

SOLQUO_API const char* solquo_last_error(void);
SOLQUO_API const char* solquo_version(void);
SOLQUO_API void solquo_string_free(char* s);

/* options; a null options pointer means defaults everywhere */
SOLQUO_API solquo_options* solquo_options_new(void);
SOLQUO_API void solquo_options_free(solquo_options* o);
SOLQUO_API solquo_status solquo_options_set_threads(solquo_options* o, unsigned threads);
/* decimal string, so ceilings above 2^64 can be expressed */
SOLQUO_API solquo_status solquo_options_set_max_order(solquo_options* o, const char* decimal);
SOLQUO_API solquo_status solquo_options_set_max_dim(solquo_options* o, size_t dim);
SOLQUO_API solquo_status solquo_options_set_max_rows(solquo_options* o, uint64_t rows);
SOLQUO_API solquo_status solquo_options_set_progress(solquo_options* o, solquo_progress_fn fn,
                                                     void* user);

/* power-conjugate presentations */
SOLQUO_API solquo_status solquo_pc_parse(const char* text, solquo_pc** out);
SOLQUO_API void solquo_pc_free(solquo_pc* pc);
SOLQUO_API size_t solquo_pc_size(const solquo_pc* pc);
SOLQUO_API solquo_status solquo_pc_format(const solquo_pc* pc, solquo_format format, char** out);
/* *consistent is set to 1 or 0; *report lists witnesses (may be null) */
SOLQUO_API solquo_status solquo_pc_check(const solquo_pc* pc, const solquo_options* o,
                                         int* consistent, char** report);
SOLQUO_API solquo_status solquo_pc_collect(const solquo_pc* pc, const char* word, char** out);
SOLQUO_API solquo_status solquo_pc_order(const solquo_pc* pc, char** decimal,
                                         char** factorization);
SOLQUO_API solquo_status solquo_pc_cover(const solquo_pc* pc, uint32_t prime,
                                         const solquo_options* o, solquo_pc** out);

/* finite presentations and the quotient algorithm */
SOLQUO_API solquo_status solquo_fp_parse(const char* text, solquo_fp** out);
SOLQUO_API void solquo_fp_free(solquo_fp* fp);
/* On SOLQUO_ERR_CEILING *out still receives the last quotient reached. */
SOLQUO_API solquo_status solquo_run(const solquo_fp* fp, const char* series,
                                    const solquo_options* o, solquo_result** out);
SOLQUO_API void solquo_result_free(solquo_result* r);
SOLQUO_API solquo_status solquo_result_format(const solquo_result* r, solquo_format format,
                                              char** out);
SOLQUO_API solquo_status solquo_result_order(const solquo_result* r, char** decimal);
/* borrowed; valid while r lives */
SOLQUO_API const solquo_pc* solquo_result_pc(const solquo_result* r);

#ifdef __cplusplus
}
#endif

#endif
