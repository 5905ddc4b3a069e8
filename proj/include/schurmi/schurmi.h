/* C interface to the schurmi library.
 *
 * Point sets are passed as row-major arrays of `rows * dim` doubles.
 * Every fallible call returns an smi_status; on failure the message of the
 * most recent error on the calling thread is available from smi_last_error().
 * Handles are opaque and must be released with their matching _destroy call.
 */
#ifndef SCHURMI_H
#define SCHURMI_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SCHURMI_BUILDING)
#    define SMI_API __declspec(dllexport)
#  else
#    define SMI_API __declspec(dllimport)
#  endif
#else
#  define SMI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum smi_status {
    SMI_OK = 0,
    SMI_ERR_INVALID_INPUT = 1,
    SMI_ERR_SINGULAR = 2,
    SMI_ERR_FIT_FAILED = 3,
    SMI_ERR_PARSE = 4,
    SMI_ERR_INSUFFICIENT_DATA = 5,
    SMI_ERR_DEGENERATE_DATA = 6,
    SMI_ERR_IO = 7,
    SMI_ERR_INTERNAL = 99
} smi_status;

typedef struct smi_hyperparams {
    double signal_variance;
    double length_scale;
    double noise_variance;
} smi_hyperparams;

typedef struct smi_cache smi_cache;
typedef struct smi_selection smi_selection;
typedef struct smi_report smi_report;

SMI_API const char* smi_version(void);
/* Message of the last failed call on this thread; "" if none. */
SMI_API const char* smi_last_error(void);
SMI_API const char* smi_status_string(smi_status status);

/* ---- kernel / gp ---------------------------------------------------- */

SMI_API smi_status smi_kernel_eval(const smi_hyperparams* params, const double* x, const double* x_prime,
                                   size_t dim, double* out);

/* mean_out and var_out receive n_test values each. jitter < 0 selects the default. */
SMI_API smi_status smi_posterior(const smi_hyperparams* params, const double* train_x, const double* train_y,
                                 size_t n_train, const double* test_x, size_t n_test, size_t dim, double jitter,
                                 double* mean_out, double* var_out);

/* ---- MI cache and objectives ---------------------------------------- */

/* g may be NULL (no surrogate block). jitter < 0 selects the default. */
SMI_API smi_status smi_cache_create(const double* v, size_t m, size_t dim, const smi_hyperparams* params,
                                    const double* g, size_t g_rows, int noise_in_diag, double jitter,
                                    smi_cache** out);
SMI_API void smi_cache_destroy(smi_cache* cache);
SMI_API smi_status smi_cache_logdet(const smi_cache* cache, double* out);

SMI_API smi_status smi_standard_mi(const smi_cache* cache, const size_t* a_idx, size_t s, int use_precompute,
                                   double* out);
SMI_API smi_status smi_union_mi(const smi_cache* cache, const double* a, size_t s, double* out);
SMI_API smi_status smi_schur_mi_indices(const smi_cache* cache, const size_t* a_idx, size_t s, double* out);
SMI_API smi_status smi_schur_mi_points(const smi_cache* cache, const double* a, size_t s, double* out);

/* objective: "standard_mi", "schur_mi", "a_opt", "b_opt", "d_opt". */
SMI_API smi_status smi_evaluate(const smi_cache* cache, const char* objective, int precompute,
                                const size_t* a_idx, size_t s, double* out);

/* ---- selection ------------------------------------------------------- */

/* g_out receives m * dim values. */
SMI_API smi_status smi_make_surrogate(const double* v, size_t m, size_t dim, double sigma, uint64_t seed,
                                      double* g_out);

/* sigma < 0 selects the default surrogate scale. */
SMI_API smi_status smi_select(const double* v, size_t m, size_t dim, const smi_hyperparams* params,
                              const char* objective, int precompute, int noise_in_diag, size_t s, double sigma,
                              uint64_t seed, int lazy, smi_selection** out);
SMI_API void smi_selection_destroy(smi_selection* sel);
SMI_API size_t smi_selection_size(const smi_selection* sel);
/* order_out and gains_out receive smi_selection_size() values each. */
SMI_API void smi_selection_order(const smi_selection* sel, size_t* order_out);
SMI_API void smi_selection_gains(const smi_selection* sel, double* gains_out);
SMI_API double smi_selection_objective(const smi_selection* sel);
SMI_API int64_t smi_selection_eval_count(const smi_selection* sel);
SMI_API double smi_selection_cache_seconds(const smi_selection* sel);
SMI_API double smi_selection_select_seconds(const smi_selection* sel);
SMI_API size_t smi_selection_warning_count(const smi_selection* sel);
SMI_API const char* smi_selection_warning(const smi_selection* sel, size_t i);

/* ---- experiments ------------------------------------------------------ */

/* config_json: RunConfig document. The report holds JSON and CSV text. */
SMI_API smi_status smi_run_experiment(const char* config_json, smi_report** out);
/* Report JSON holds the verify summary; passed_out is 1 when every check passed. */
SMI_API smi_status smi_verify(uint64_t seed, int trials, smi_report** out, int* passed_out);
SMI_API const char* smi_report_json(const smi_report* report);
SMI_API const char* smi_report_csv(const smi_report* report);
SMI_API void smi_report_destroy(smi_report* report);

#ifdef __cplusplus
}
#endif

#endif /* SCHURMI_H */
