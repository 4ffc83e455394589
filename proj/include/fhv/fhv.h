#ifndef FHV_H
#define FHV_H

/* C interface to the Fermat period toolkit.  Every call returns a status;
   on failure fhv_last_error() describes it (per thread).  Strings handed out
   through char** must be released with fhv_string_free. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  FHV_OK = 0,
  FHV_ERR_INVALID_ARGUMENT = 1,
  FHV_ERR_PARSE = 2,
  FHV_ERR_IO = 3,
  FHV_ERR_INTERNAL = 4,
  FHV_ERR_NULL = 5
} fhv_status;

typedef enum { FHV_FORMAT_JSON = 0, FHV_FORMAT_TSV = 1, FHV_FORMAT_TEXT = 2 } fhv_format;
typedef enum { FHV_RANK_EXACT = 0, FHV_RANK_MODULAR = 1, FHV_RANK_AUTO = 2 } fhv_rank_method;
typedef enum { FHV_SUITE_THEOREM2 = 0, FHV_SUITE_CONJECTURE1 = 1, FHV_SUITE_PROP3 = 2 } fhv_suite_kind;

typedef struct fhv_matrix fhv_matrix;
typedef struct fhv_report fhv_report;

const char* fhv_last_error(void);
void fhv_string_free(char* s);

/* Combinatorics and codimension. */
fhv_status fhv_count_cycles(int n, int d, char** decimal);
fhv_status fhv_index_set_size(int n, int d, int total, char** decimal);
/* JSON array of exponent tuples. */
fhv_status fhv_enumerate_index_set(int n, int d, int total, char** json);
/* JSON array of {"a","b","sign"}. */
fhv_status fhv_enumerate_cycles(int n, int d, char** json);
fhv_status fhv_codim(int n, int d, const int* a, size_t len, int64_t* out);
fhv_status fhv_expected_rank_linear_pair(int n, int d, int m, int64_t* out);
fhv_status fhv_expected_rank_ci(int n, int d, const int* degrees, size_t len, int64_t* out);
fhv_status fhv_expected_rank_ci_all_ones(int n, int d, int64_t* out);

/* Periods as JSON {"scalar": "p/q", "normalized": {"order", "coeffs"}}. */
fhv_status fhv_period_linear(int n, int d, const int* a, size_t a_len, const int* b, size_t b_len,
                             const int* i, size_t i_len, char** json);
fhv_status fhv_period_pair(int n, int d, int m, const int* i, size_t i_len, char** json);
fhv_status fhv_period_ci(int n, int d, const int* degrees, size_t deg_len, const int* i, size_t i_len,
                         char** json);

/* Matrices.  provenance_json: {"kind":"linear-pair","m":..} |
   {"kind":"complete-intersection","degrees":[..]} (optional "roots") |
   {"kind":"single-cycle","a":[..],"b":[..]}. */
fhv_status fhv_matrix_build(int n, int d, const char* provenance_json, unsigned jobs, fhv_matrix** out);
fhv_status fhv_matrix_load(const char* text, size_t len, fhv_format format, fhv_matrix** out);
/* Format chosen from the first byte ('{' json, '#' tsv). */
fhv_status fhv_matrix_load_file(const char* path, fhv_matrix** out);
fhv_status fhv_matrix_dump(const fhv_matrix* m, fhv_format format, char** text);
fhv_status fhv_matrix_shape(const fhv_matrix* m, size_t* rows, size_t* cols);
/* JSON {"rank","method","certified","exact_rank","primes","prime_ranks"}. */
fhv_status fhv_matrix_rank(const fhv_matrix* m, fhv_rank_method method, size_t prime_count, char** json);
fhv_status fhv_matrix_rank_value(const fhv_matrix* m, fhv_rank_method method, size_t prime_count,
                                 size_t* rank, int* certified);
void fhv_matrix_free(fhv_matrix* m);

/* Verification suites. */
typedef struct {
  fhv_rank_method method;
  size_t prime_count;
  unsigned jobs;
  int n_filter; /* 0: no filter */
  int d_filter; /* 0: no filter */
  int exhaustive;
  size_t samples_per_case;
  int check_root_independence;
  int prop3_max_d;
  uint64_t seed;
} fhv_suite_config;

void fhv_suite_config_default(fhv_suite_config* config);
fhv_status fhv_suite_run(fhv_suite_kind kind, const fhv_suite_config* config, fhv_report** out);
fhv_status fhv_report_render(const fhv_report* r, fhv_format format, char** text);
/* 0 iff every case passed. */
int fhv_report_exit_code(const fhv_report* r);
size_t fhv_report_case_count(const fhv_report* r);
void fhv_report_free(fhv_report* r);

#ifdef __cplusplus
}
#endif

#endif
