#ifndef NILGAUSS_NILGAUSS_H
#define NILGAUSS_NILGAUSS_H

#include <stddef.h>

#if defined(_WIN32)
#define NG_API __declspec(dllexport)
#else
#define NG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ng_status {
  NG_OK = 0,
  NG_ERR_INVALID_ARGUMENT = 1,
  NG_ERR_DIMENSION = 2,
  NG_ERR_NOT_IN_SUBSPACE = 3,
  NG_ERR_RANK_DEFICIENT = 4,
  NG_ERR_BOUNDARY = 5,
  NG_ERR_WRONG_ALGEBRA = 6,
  NG_ERR_WRONG_FRAME = 7,
  NG_ERR_PARSE = 8,
  NG_ERR_CONFIG = 9,
  NG_ERR_INTERNAL = 10
} ng_status;

typedef struct ng_algebra ng_algebra;
typedef struct ng_expression ng_expression;
typedef struct ng_report ng_report;

/* Message of the last failure on the calling thread ("" if none). */
NG_API const char* ng_last_error(void);
NG_API const char* ng_status_name(ng_status status);

/* Strings returned through char** are owned by the caller. */
NG_API void ng_string_free(char* s);

NG_API ng_status ng_algebra_from_json(const char* json, ng_algebra** out);
NG_API ng_status ng_algebra_heisenberg(int m, ng_algebra** out);
NG_API void ng_algebra_free(ng_algebra* alg);
NG_API int ng_algebra_dim_total(const ng_algebra* alg);
NG_API int ng_algebra_dim_center(const ng_algebra* alg);
/* Writes the violation report as JSON; *ok is 1 when there are none. */
NG_API ng_status ng_algebra_validate(const ng_algebra* alg, double tol, int* ok, char** report_json);
NG_API ng_status ng_algebra_is_heisenberg_type(const ng_algebra* alg, double tol, int* out);
/* Vectors have dim_total entries. */
NG_API ng_status ng_algebra_bracket(const ng_algebra* alg, const double* x, const double* y,
                                    double* out);
NG_API ng_status ng_algebra_j_apply(const ng_algebra* alg, const double* z, const double* x,
                                    double* out);

/* On a parse failure *offset (if non-null) receives the character offset. */
NG_API ng_status ng_expression_parse(const char* text, ng_expression** out, size_t* offset);
NG_API ng_status ng_expression_eval(const ng_expression* e, const double* params, size_t count,
                                    double* out);
NG_API void ng_expression_free(ng_expression* e);

/* Problems in a job config as a JSON list of strings; NG_OK iff empty. */
NG_API ng_status ng_job_validate(const char* config_json, char** problems_json);
NG_API ng_status ng_job_run(const char* config_json, ng_report** out);
NG_API int ng_report_passed(const ng_report* report);
NG_API ng_status ng_report_json(const ng_report* report, char** out);
NG_API ng_status ng_report_csv(const ng_report* report, char** out);
NG_API void ng_report_free(ng_report* report);

NG_API ng_status ng_examples_list(char** names_json);
NG_API ng_status ng_example_config(const char* name, char** config_json);

#ifdef __cplusplus
}
#endif

#endif
