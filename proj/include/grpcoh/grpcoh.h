#ifndef GRPCOH_H
#define GRPCOH_H

/* C interface to the grpcoh library. Objects are opaque handles released by
 * their *_destroy function; strings returned through char** are released
 * with grpcoh_string_free. Every call returns a status; on failure
 * grpcoh_last_error() describes the problem (thread-local). */

#include <stddef.h>

#if defined(_WIN32)
#define GRPCOH_API __declspec(dllexport)
#else
#define GRPCOH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum grpcoh_status {
  GRPCOH_OK = 0,
  GRPCOH_ERR_INVALID_ARGUMENT = 1,
  GRPCOH_ERR_RANK_MISMATCH = 2,
  GRPCOH_ERR_BALL_TOO_LARGE = 3,
  GRPCOH_ERR_BUDGET_EXCEEDED = 4,
  GRPCOH_ERR_ALIASING_RISK = 5,
  GRPCOH_ERR_DEGENERATE_INPUT = 6,
  GRPCOH_ERR_RESOLUTION_TOO_COARSE = 7,
  GRPCOH_ERR_HYPOTHESIS_VIOLATED = 8,
  GRPCOH_ERR_INCONSISTENT_DATA = 9,
  GRPCOH_ERR_AMBIGUOUS_NORMALIZATION = 10,
  GRPCOH_ERR_SOLVE_FAILED = 11,
  GRPCOH_ERR_PARSE = 12,
  GRPCOH_ERR_INTERNAL = 100
} grpcoh_status;

typedef enum grpcoh_family { GRPCOH_FREE_ABELIAN = 0, GRPCOH_FREE = 1 } grpcoh_family;

typedef struct grpcoh_group grpcoh_group;
typedef struct grpcoh_sum grpcoh_sum;
typedef struct grpcoh_report grpcoh_report;

GRPCOH_API const char* grpcoh_version(void);
GRPCOH_API const char* grpcoh_last_error(void);
GRPCOH_API const char* grpcoh_status_name(grpcoh_status status);
GRPCOH_API void grpcoh_string_free(char* s);

/* Groups */
GRPCOH_API grpcoh_status grpcoh_group_create(grpcoh_family family, int rank, grpcoh_group** out);
GRPCOH_API void grpcoh_group_destroy(grpcoh_group* g);

/* Formal sums with complex coefficients. JSON: [{"elem": "1,-2", "re": x, "im": y}, ...] */
GRPCOH_API grpcoh_status grpcoh_sum_from_json(const grpcoh_group* g, const char* json, grpcoh_sum** out);
GRPCOH_API grpcoh_status grpcoh_sum_to_json(const grpcoh_sum* a, char** out);
GRPCOH_API grpcoh_status grpcoh_sum_size(const grpcoh_sum* a, size_t* out);
GRPCOH_API grpcoh_status grpcoh_sum_convolve(const grpcoh_sum* a, const grpcoh_sum* b, grpcoh_sum** out);
GRPCOH_API grpcoh_status grpcoh_sum_lp_norm(const grpcoh_sum* a, double p, double* out);
GRPCOH_API grpcoh_status grpcoh_sum_evaluate(const grpcoh_sum* a, const double* theta, size_t n, double* re,
                                             double* im);
/* Certified sup over the torus (free abelian groups): lower <= sup <= upper, upper - lower <= eps. */
GRPCOH_API grpcoh_status grpcoh_sum_certified_sup(const grpcoh_sum* a, double eps, double* lower, double* upper);
GRPCOH_API grpcoh_status grpcoh_sum_op_norm_oracle(const grpcoh_sum* a, int truncation, double* out);
GRPCOH_API void grpcoh_sum_destroy(grpcoh_sum* a);

/* Experiments. config_json is an object whose keys mirror the CLI flags,
 * e.g. {"command": "folner", "rank": 1, "kmax": 100, "norm": "l2"}. */
GRPCOH_API grpcoh_status grpcoh_run(const char* config_json, grpcoh_report** out);
GRPCOH_API grpcoh_status grpcoh_report_json(const grpcoh_report* r, char** out);
GRPCOH_API grpcoh_status grpcoh_report_csv(const grpcoh_report* r, char** out);
GRPCOH_API int grpcoh_report_passed(const grpcoh_report* r);
/* 0 on pass, 2 on certificate failure. */
GRPCOH_API int grpcoh_report_exit_code(const grpcoh_report* r);
GRPCOH_API void grpcoh_report_destroy(grpcoh_report* r);

#ifdef __cplusplus
}
#endif

#endif
