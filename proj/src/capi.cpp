#include "schurmi/schurmi.h"

#include <exception>
#include <new>
#include <string>

#include "schurmi/error.hpp"
#include "schurmi/experiment.hpp"
#include "schurmi/gp.hpp"
#include "schurmi/kernel.hpp"
#include "schurmi/mi.hpp"
#include "schurmi/select.hpp"
#include "schurmi/verify.hpp"

struct smi_cache {
    schurmi::MICache cache;
};

struct smi_selection {
    schurmi::SelectionResult result;
};

struct smi_report {
    std::string json;
    std::string csv;
};

namespace {

using namespace schurmi;

thread_local std::string last_error;

smi_status to_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::kOk: return SMI_OK;
        case ErrorCode::kInvalidInput: return SMI_ERR_INVALID_INPUT;
        case ErrorCode::kSingularMatrix: return SMI_ERR_SINGULAR;
        case ErrorCode::kFittingFailed: return SMI_ERR_FIT_FAILED;
        case ErrorCode::kParseError: return SMI_ERR_PARSE;
        case ErrorCode::kInsufficientData: return SMI_ERR_INSUFFICIENT_DATA;
        case ErrorCode::kDegenerateData: return SMI_ERR_DEGENERATE_DATA;
        case ErrorCode::kIo: return SMI_ERR_IO;
        case ErrorCode::kInternal: return SMI_ERR_INTERNAL;
    }
    return SMI_ERR_INTERNAL;
}

template <typename F>
smi_status guarded(F&& body) {
    try {
        body();
        last_error.clear();
        return SMI_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const nlohmann::json::exception& e) {
        last_error = std::string("json: ") + e.what();
        return SMI_ERR_PARSE;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return SMI_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return SMI_ERR_INTERNAL;
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw InvalidInput(what);
}

HyperParams to_params(const smi_hyperparams* p) {
    require(p != nullptr, "hyperparams pointer is null");
    HyperParams out{p->signal_variance, p->length_scale, p->noise_variance};
    out.validate();
    return out;
}

PointSet to_points(const double* data, size_t rows, size_t dim) {
    require(dim >= 1, "dimension must be >= 1");
    require(rows == 0 || data != nullptr, "point array is null");
    return PointSet(Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        data, static_cast<Index>(rows), static_cast<Index>(dim)));
}

IndexList to_indices(const size_t* idx, size_t n) {
    require(n == 0 || idx != nullptr, "index array is null");
    return IndexList(idx, idx + n);
}

}  // namespace

extern "C" {

const char* smi_version(void) { return "1.0.0"; }

const char* smi_last_error(void) { return last_error.c_str(); }

const char* smi_status_string(smi_status status) {
    switch (status) {
        case SMI_OK: return "ok";
        case SMI_ERR_INVALID_INPUT: return "invalid input";
        case SMI_ERR_SINGULAR: return "singular matrix";
        case SMI_ERR_FIT_FAILED: return "fitting failed";
        case SMI_ERR_PARSE: return "parse error";
        case SMI_ERR_INSUFFICIENT_DATA: return "insufficient data";
        case SMI_ERR_DEGENERATE_DATA: return "degenerate data";
        case SMI_ERR_IO: return "i/o error";
        case SMI_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

smi_status smi_kernel_eval(const smi_hyperparams* params, const double* x, const double* x_prime, size_t dim,
                           double* out) {
    return guarded([&] {
        require(x && x_prime && out, "null argument");
        const auto n = static_cast<Index>(dim);
        *out = kernel_eval(to_params(params), Eigen::Map<const Eigen::RowVectorXd>(x, n),
                           Eigen::Map<const Eigen::RowVectorXd>(x_prime, n));
    });
}

smi_status smi_posterior(const smi_hyperparams* params, const double* train_x, const double* train_y, size_t n_train,
                         const double* test_x, size_t n_test, size_t dim, double jitter, double* mean_out,
                         double* var_out) {
    return guarded([&] {
        require(train_y && mean_out && var_out, "null argument");
        const Vector y = Eigen::Map<const Vector>(train_y, static_cast<Index>(n_train));
        const Posterior post = posterior(to_params(params), to_points(train_x, n_train, dim), y,
                                         to_points(test_x, n_test, dim),
                                         jitter < 0.0 ? std::nullopt : std::optional<double>(jitter));
        Eigen::Map<Vector>(mean_out, static_cast<Index>(n_test)) = post.mean;
        Eigen::Map<Vector>(var_out, static_cast<Index>(n_test)) = post.variance;
    });
}

smi_status smi_cache_create(const double* v, size_t m, size_t dim, const smi_hyperparams* params, const double* g,
                            size_t g_rows, int noise_in_diag, double jitter, smi_cache** out) {
    return guarded([&] {
        require(out != nullptr, "null output handle");
        *out = nullptr;
        std::optional<PointSet> surrogate;
        if (g != nullptr) surrogate = to_points(g, g_rows, dim);
        *out = new smi_cache{MICache(to_points(v, m, dim), to_params(params), std::move(surrogate),
                                     CacheOptions{noise_in_diag != 0, jitter})};
    });
}

void smi_cache_destroy(smi_cache* cache) { delete cache; }

smi_status smi_cache_logdet(const smi_cache* cache, double* out) {
    return guarded([&] {
        require(cache && out, "null argument");
        *out = cache->cache.logdet_vv();
    });
}

smi_status smi_standard_mi(const smi_cache* cache, const size_t* a_idx, size_t s, int use_precompute, double* out) {
    return guarded([&] {
        require(cache && out, "null argument");
        *out = standard_mi(to_indices(a_idx, s), cache->cache, use_precompute != 0);
    });
}

smi_status smi_union_mi(const smi_cache* cache, const double* a, size_t s, double* out) {
    return guarded([&] {
        require(cache && out, "null argument");
        *out = union_mi(to_points(a, s, static_cast<size_t>(cache->cache.candidates().dim())), cache->cache);
    });
}

smi_status smi_schur_mi_indices(const smi_cache* cache, const size_t* a_idx, size_t s, double* out) {
    return guarded([&] {
        require(cache && out, "null argument");
        *out = schur_mi(to_indices(a_idx, s), cache->cache);
    });
}

smi_status smi_schur_mi_points(const smi_cache* cache, const double* a, size_t s, double* out) {
    return guarded([&] {
        require(cache && out, "null argument");
        *out = schur_mi(to_points(a, s, static_cast<size_t>(cache->cache.candidates().dim())), cache->cache);
    });
}

smi_status smi_evaluate(const smi_cache* cache, const char* objective, int precompute, const size_t* a_idx, size_t s,
                        double* out) {
    return guarded([&] {
        require(cache && objective && out, "null argument");
        const ObjectiveSpec spec{parse_objective_kind(objective), precompute != 0, cache->cache.noise_in_diag()};
        *out = evaluate(spec, to_indices(a_idx, s), cache->cache);
    });
}

smi_status smi_make_surrogate(const double* v, size_t m, size_t dim, double sigma, uint64_t seed, double* g_out) {
    return guarded([&] {
        require(g_out != nullptr, "null output");
        const SurrogateSet g = make_surrogate(to_points(v, m, dim), sigma, seed);
        Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            g_out, static_cast<Index>(m), static_cast<Index>(dim)) = g.g.coords();
    });
}

smi_status smi_select(const double* v, size_t m, size_t dim, const smi_hyperparams* params, const char* objective,
                      int precompute, int noise_in_diag, size_t s, double sigma, uint64_t seed, int lazy,
                      smi_selection** out) {
    return guarded([&] {
        require(objective && out, "null argument");
        *out = nullptr;
        const ObjectiveSpec spec{parse_objective_kind(objective), precompute != 0, noise_in_diag != 0};
        SelectOptions opts;
        if (sigma >= 0.0) opts.sigma = sigma;
        opts.seed = seed;
        opts.lazy = lazy != 0;
        *out = new smi_selection{select_sensors(to_points(v, m, dim), to_params(params), spec,
                                                static_cast<Index>(s), opts)};
    });
}

void smi_selection_destroy(smi_selection* sel) { delete sel; }

size_t smi_selection_size(const smi_selection* sel) { return sel ? sel->result.order.size() : 0; }

void smi_selection_order(const smi_selection* sel, size_t* order_out) {
    if (!sel || !order_out) return;
    for (size_t i = 0; i < sel->result.order.size(); ++i) order_out[i] = static_cast<size_t>(sel->result.order[i]);
}

void smi_selection_gains(const smi_selection* sel, double* gains_out) {
    if (!sel || !gains_out) return;
    for (size_t i = 0; i < sel->result.gains.size(); ++i) gains_out[i] = sel->result.gains[i];
}

double smi_selection_objective(const smi_selection* sel) {
    if (!sel || sel->result.objective_trajectory.empty()) return 0.0;
    return sel->result.objective_trajectory.back();
}

int64_t smi_selection_eval_count(const smi_selection* sel) { return sel ? sel->result.eval_count : 0; }

double smi_selection_cache_seconds(const smi_selection* sel) { return sel ? sel->result.cache_build_time : 0.0; }

double smi_selection_select_seconds(const smi_selection* sel) { return sel ? sel->result.selection_time : 0.0; }

size_t smi_selection_warning_count(const smi_selection* sel) { return sel ? sel->result.warnings.size() : 0; }

const char* smi_selection_warning(const smi_selection* sel, size_t i) {
    if (!sel || i >= sel->result.warnings.size()) return nullptr;
    return sel->result.warnings[i].c_str();
}

smi_status smi_run_experiment(const char* config_json, smi_report** out) {
    return guarded([&] {
        require(config_json && out, "null argument");
        *out = nullptr;
        const RunConfig config = config_from_json(nlohmann::json::parse(config_json));
        const RunReport report = run_experiment(config);
        *out = new smi_report{report_to_json(report).dump(2), report_to_csv(report)};
    });
}

smi_status smi_verify(uint64_t seed, int trials, smi_report** out, int* passed_out) {
    return guarded([&] {
        require(out != nullptr, "null output handle");
        *out = nullptr;
        const VerifySummary summary = verify(seed, trials);
        if (passed_out) *passed_out = summary.passed() ? 1 : 0;
        *out = new smi_report{summary_to_json(summary).dump(2), std::string{}};
    });
}

const char* smi_report_json(const smi_report* report) { return report ? report->json.c_str() : nullptr; }

const char* smi_report_csv(const smi_report* report) { return report ? report->csv.c_str() : nullptr; }

void smi_report_destroy(smi_report* report) { delete report; }

}  // extern "C"
