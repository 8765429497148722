/*
 * tcdtw C API.
 *
 * Dependent multivariate DTW with lower-bound filtering for nearest-neighbour search.
 * Every function returns a tcdtw_status; on failure tcdtw_last_error() describes the problem
 * (thread-local, valid until the next call on the same thread). Handles are opaque and owned by
 * the caller, who releases them with the matching *_free function. Series values are row-major:
 * point i of a series occupies values[i*dims .. i*dims+dims).
 */
#ifndef TCDTW_H
#define TCDTW_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TCDTW_BUILDING)
#    define TCDTW_API __declspec(dllexport)
#  else
#    define TCDTW_API __declspec(dllimport)
#  endif
#else
#  define TCDTW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tcdtw_status {
  TCDTW_OK = 0,
  TCDTW_ERR_INVALID_INPUT = 1,
  TCDTW_ERR_PARSE = 2,
  TCDTW_ERR_CONFIG = 3,
  TCDTW_ERR_NULL_ARGUMENT = 4,
  TCDTW_ERR_INTERNAL = 5
} tcdtw_status;

typedef enum tcdtw_method {
  TCDTW_METHOD_NONE = 0,
  TCDTW_METHOD_LB_MV = 1,
  TCDTW_METHOD_LB_TI = 2,
  TCDTW_METHOD_LB_PC = 3,
  TCDTW_METHOD_TC_DTW = 4,
  TCDTW_METHOD_LB_AD = 5
} tcdtw_method;

typedef enum tcdtw_ti_variant {
  TCDTW_TI_BASIC = 0,
  TCDTW_TI_TOP = 1,
  TCDTW_TI_TIP = 2,
  TCDTW_TI_TIP_TOP = 3
} tcdtw_ti_variant;

typedef enum tcdtw_format { TCDTW_FORMAT_NATIVE = 0, TCDTW_FORMAT_TS = 1 } tcdtw_format;

typedef enum tcdtw_emit { TCDTW_EMIT_CSV = 0, TCDTW_EMIT_TABLE = 1, TCDTW_EMIT_JSON = 2 } tcdtw_emit;

typedef enum tcdtw_tune_metric { TCDTW_TUNE_WORK = 0, TCDTW_TUNE_WALL_TIME = 1 } tcdtw_tune_metric;

/* Search parameters. Initialise with tcdtw_params_default. */
typedef struct tcdtw_params {
  size_t window;
  tcdtw_method method;
  size_t period;
  tcdtw_ti_variant ti_variant;
  double e_ti;
  double e_pc;
  size_t quant_levels;
  size_t max_clusters;
  size_t expansion;
  double min_cell_frac;
  /* TCDTW_METHOD_LB_TI or TCDTW_METHOD_LB_PC once selected; TCDTW_METHOD_NONE when unresolved. */
  tcdtw_method tc_choice;
} tcdtw_params;

typedef struct tcdtw_nn_result {
  size_t best_index;
  double best_distance;
  uint64_t dtw_computed;
  uint64_t dtw_skipped;
  uint64_t lb_mv_evals;
  uint64_t advanced_lb_evals;
  uint64_t abandon_count;
  uint64_t work;
  double lb_time_s;
  double dtw_time_s;
  double total_time_s;
} tcdtw_nn_result;

typedef struct tcdtw_report_row {
  const char* dataset; /* owned by the report */
  tcdtw_method method;
  size_t window;
  size_t dims;
  double skip_pct;
  double speedup;
  double ideal_speedup;
  uint64_t dtw_computed;
  uint64_t dtw_skipped;
  double lb_time_s;
  double dtw_time_s;
  double total_time_s;
  uint64_t seed;
  size_t threads;
} tcdtw_report_row;

typedef struct tcdtw_verify_result {
  size_t pairs;
  size_t checks;
  size_t violations;
} tcdtw_verify_result;

typedef struct tcdtw_dataset tcdtw_dataset;
typedef struct tcdtw_bench_config tcdtw_bench_config;
typedef struct tcdtw_report tcdtw_report;

TCDTW_API const char* tcdtw_version(void);
TCDTW_API const char* tcdtw_last_error(void);
TCDTW_API const char* tcdtw_method_name(tcdtw_method method);
/* Accepts the lower-case CLI names (none, lb_mv, lb_ti, lb_pc, tc_dtw, lb_ad). */
TCDTW_API tcdtw_status tcdtw_method_parse(const char* name, tcdtw_method* out);

TCDTW_API void tcdtw_params_default(tcdtw_params* params);

/* --- Pairwise primitives over raw buffers (both series have n points of d values) --- */

/* Pass abandon_above = INFINITY for an exact distance. */
TCDTW_API tcdtw_status tcdtw_point_distance(const double* a, const double* b, size_t d, double* out);
TCDTW_API tcdtw_status tcdtw_dtw(const double* q, const double* c, size_t n, size_t d, size_t window,
                                 double abandon_above, double* out_distance, int* out_abandoned);
/* Lower bound of dtw(q, c, params->window) by LB_MV, LB_AD, LB_TI (params->ti_variant, params->period)
   or LB_PC (params clustering fields, ranges from q). */
TCDTW_API tcdtw_status tcdtw_lower_bound(tcdtw_method method, const double* q, const double* c, size_t n,
                                         size_t d, const tcdtw_params* params, double* out);

/* --- Datasets --- */

TCDTW_API tcdtw_status tcdtw_dataset_load(const char* path, tcdtw_format format, tcdtw_dataset** out);
/* count series of n points in d dimensions, concatenated. */
TCDTW_API tcdtw_status tcdtw_dataset_from_values(const char* name, const double* values, size_t count, size_t n,
                                                 size_t d, tcdtw_dataset** out);
TCDTW_API void tcdtw_dataset_free(tcdtw_dataset* ds);
TCDTW_API tcdtw_status tcdtw_dataset_shape(const tcdtw_dataset* ds, size_t* count, size_t* n, size_t* d);
/* Pointer to the values of one series, valid while the dataset lives and is not modified. */
TCDTW_API tcdtw_status tcdtw_dataset_series(const tcdtw_dataset* ds, size_t index, const double** values);
TCDTW_API tcdtw_status tcdtw_dataset_normalize(tcdtw_dataset* ds);
TCDTW_API tcdtw_status tcdtw_dataset_truncate_dims(tcdtw_dataset* ds, size_t dims_used);
TCDTW_API tcdtw_status tcdtw_dataset_write_native(const tcdtw_dataset* ds, const char* path);
/* Seeded query/candidate split; both outputs keep the file order and inherit the value ranges. */
TCDTW_API tcdtw_status tcdtw_dataset_split(const tcdtw_dataset* ds, double query_frac, uint64_t seed,
                                           tcdtw_dataset** queries, tcdtw_dataset** candidates);

/* --- Search --- */

/* Nearest neighbour of every query among the candidates. `results` holds one entry per query. */
TCDTW_API tcdtw_status tcdtw_search(const tcdtw_dataset* queries, const tcdtw_dataset* candidates,
                                    const tcdtw_params* params, size_t threads, tcdtw_nn_result* results,
                                    size_t results_len);
/* Tunes e_ti, e_pc, quant_levels and tc_choice of *params in place on a seeded sample. */
TCDTW_API tcdtw_status tcdtw_tune(const tcdtw_dataset* queries, const tcdtw_dataset* candidates, uint64_t seed,
                                  tcdtw_tune_metric metric, tcdtw_params* params);
/* Sets params->tc_choice without tuning thresholds. */
TCDTW_API tcdtw_status tcdtw_select(const tcdtw_dataset* queries, const tcdtw_dataset* candidates, uint64_t seed,
                                    tcdtw_tune_metric metric, tcdtw_params* params);
TCDTW_API tcdtw_status tcdtw_verify(const tcdtw_dataset* ds, const tcdtw_params* params, size_t max_pairs,
                                    uint64_t seed, tcdtw_verify_result* out);

/* --- Benchmark --- */

TCDTW_API tcdtw_status tcdtw_bench_config_new(tcdtw_bench_config** out);
TCDTW_API void tcdtw_bench_config_free(tcdtw_bench_config* cfg);
TCDTW_API tcdtw_status tcdtw_bench_config_add_data(tcdtw_bench_config* cfg, const char* path);
TCDTW_API tcdtw_status tcdtw_bench_config_set_format(tcdtw_bench_config* cfg, tcdtw_format format);
/* The first call replaces the default method list. */
TCDTW_API tcdtw_status tcdtw_bench_config_add_method(tcdtw_bench_config* cfg, tcdtw_method method);
/* The first call replaces the default window list. */
TCDTW_API tcdtw_status tcdtw_bench_config_add_window(tcdtw_bench_config* cfg, size_t window);
/* dims = 0 keeps every dimension. The first call replaces the default list. */
TCDTW_API tcdtw_status tcdtw_bench_config_add_dims(tcdtw_bench_config* cfg, size_t dims);
TCDTW_API tcdtw_status tcdtw_bench_config_set_seed(tcdtw_bench_config* cfg, uint64_t seed);
TCDTW_API tcdtw_status tcdtw_bench_config_set_reps(tcdtw_bench_config* cfg, size_t reps);
TCDTW_API tcdtw_status tcdtw_bench_config_set_tune(tcdtw_bench_config* cfg, int tune, tcdtw_tune_metric metric);
TCDTW_API tcdtw_status tcdtw_bench_config_set_threads(tcdtw_bench_config* cfg, size_t threads);
TCDTW_API tcdtw_status tcdtw_bench_config_set_query_frac(tcdtw_bench_config* cfg, double frac);
TCDTW_API tcdtw_status tcdtw_bench_config_set_params(tcdtw_bench_config* cfg, const tcdtw_params* base);

TCDTW_API tcdtw_status tcdtw_bench_run(const tcdtw_bench_config* cfg, tcdtw_report** out);
TCDTW_API void tcdtw_report_free(tcdtw_report* report);
TCDTW_API size_t tcdtw_report_size(const tcdtw_report* report);
TCDTW_API tcdtw_status tcdtw_report_row_at(const tcdtw_report* report, size_t index, tcdtw_report_row* out);
/* Renders the report. *out is allocated by the library; release with tcdtw_string_free. */
TCDTW_API tcdtw_status tcdtw_report_emit(const tcdtw_report* report, tcdtw_emit format, int show_ideal,
                                         char** out);
TCDTW_API void tcdtw_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* TCDTW_H */
