/* C interface to the prkit core.
 *
 * Handles are opaque and owned by the caller; release them with the matching
 * *_close function. Functions returning text write a heap string to *out that
 * must be released with prk_string_free. On failure the message for the
 * calling thread is available from prk_last_error until the next call.
 */
#ifndef PRKIT_PRKIT_H
#define PRKIT_PRKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PRKIT_BUILDING_LIBRARY)
#    define PRK_API __declspec(dllexport)
#  else
#    define PRK_API __declspec(dllimport)
#  endif
#else
#  define PRK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum prk_status {
  PRK_OK = 0,
  PRK_NOT_FOUND = 1, /* the query ran to completion with a negative answer */
  PRK_ERR_PARSE = 2,
  PRK_ERR_DIMENSION = 3,
  PRK_ERR_CAPACITY = 4,
  PRK_ERR_DOMAIN = 5,
  PRK_ERR_PRECONDITION = 6,
  PRK_ERR_UNKNOWN_ID = 7,
  PRK_ERR_INVALID_ARGUMENT = 8,
  PRK_ERR_INTERNAL = 9
} prk_status;

typedef struct prk_system prk_system;
typedef struct prk_coloring prk_coloring;

typedef struct prk_budget {
  uint64_t max_nodes;
  uint64_t max_millis;
  int64_t n;      /* integer domain [1, n] */
  int64_t height; /* rational height bound */
} prk_budget;

PRK_API const char* prk_version(void);
PRK_API const char* prk_last_error(void);
PRK_API const char* prk_status_name(prk_status s);
PRK_API void prk_string_free(char* s);
PRK_API prk_budget prk_default_budget(void);

/* Systems: registry ids ("schur", "vdw:4", "sec2-augmented", ...) or a
 * matrix in JSON form {"rows","cols","entries":[["p/q",...],...]}. */
PRK_API prk_status prk_system_open(const char* id, prk_system** out);
PRK_API prk_status prk_system_from_json(const char* matrix_json, prk_system** out);
PRK_API void prk_system_close(prk_system* s);
PRK_API int prk_system_is_finite(const prk_system* s);
PRK_API prk_status prk_system_describe(const prk_system* s, char** out);
PRK_API prk_status prk_system_ids(char** out);

/* Columns property. PRK_OK with a certificate, PRK_NOT_FOUND if none exists.
 * max_columns of 0 keeps the default cap. */
PRK_API prk_status prk_check_cp(const prk_system* s, size_t max_columns, char** out);
/* PRK_OK if the certificate is valid for the system, PRK_NOT_FOUND if not. */
PRK_API prk_status prk_verify_certificate(const prk_system* s, const char* certificate_json);

/* Non-empty zero-sum set of columns. For infinite systems `cols` columns of
 * every block are searched (0 selects 64). max_size 0 means unlimited. */
PRK_API prk_status prk_zero_subset(const prk_system* s, uint64_t cols, size_t max_size, char** out);

/* Row sums of absolute values, boundedness and the smallest admissible prime. */
PRK_API prk_status prk_row_sums(const prk_system* s, char** out);

/* J from a monochromatic positive kernel vector given as a JSON array. */
PRK_API prk_status prk_extract_zero_subset(const prk_system* s, uint64_t q, const char* solution_json,
                                           char** out);

/* Colorings: "digit:q=5", "tau", "phi", "phiprime", "psi", "parity". */
PRK_API prk_status prk_coloring_open(const char* id, prk_coloring** out);
PRK_API prk_status prk_coloring_from_table(const size_t* colors, size_t n, size_t palette,
                                           prk_coloring** out);
PRK_API void prk_coloring_close(prk_coloring* c);
PRK_API prk_status prk_coloring_eval(const prk_coloring* c, const char* value, uint64_t* color);
PRK_API prk_status prk_coloring_ids(char** out);
PRK_API prk_status prk_nu_csv(uint64_t t_max, char** out);

/* Searches. Outcome JSON carries "ms" only when `timing` is non-zero. */
PRK_API prk_status prk_find_mono_solution(const prk_system* s, const prk_coloring* c, const prk_budget* b,
                                          int timing, char** out);
PRK_API prk_status prk_forcing_number(const prk_system* s, unsigned k, uint64_t cap, unsigned threads,
                                      int timing, char** out);
PRK_API prk_status prk_solution_in_class(const prk_system* s, const int64_t* cls, size_t n, int distinct,
                                         char** out);
PRK_API prk_status prk_truncation_demo(unsigned m, unsigned k, uint64_t cap, unsigned threads, int timing,
                                       char** out);
PRK_API prk_status prk_blocking_search(const char* property, uint64_t bound, char** out);
PRK_API prk_status prk_sample_property(const char* property, uint64_t samples, uint64_t seed, char** out);

#ifdef __cplusplus
}
#endif

#endif /* PRKIT_PRKIT_H */
