#include "schurmi/mi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "schurmi/error.hpp"
#include "schurmi/kernel.hpp"

namespace schurmi {
namespace {

void check_indices(std::span<const Index> a, Index domain, const char* what) {
    if (a.empty()) throw InvalidInput(std::string(what) + ": selected set must be nonempty");
    IndexList sorted(a.begin(), a.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 0 || sorted.back() >= domain) {
        throw InvalidInput(std::string(what) + ": index out of range [0, " + std::to_string(domain) + ")");
    }
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidInput(std::string(what) + ": duplicate index");
    }
}

Matrix gather(const Matrix& k, std::span<const Index> idx) {
    const auto n = static_cast<Index>(idx.size());
    Matrix out(n, n);
    for (Index j = 0; j < n; ++j) {
        const Index cj = idx[static_cast<std::size_t>(j)];
        for (Index i = 0; i < n; ++i) out(i, j) = k(idx[static_cast<std::size_t>(i)], cj);
    }
    return out;
}

}  // namespace

double entropy(const Eigen::Ref<const Matrix>& k) {
    const double s = static_cast<double>(k.rows());
    return 0.5 * s * std::log(2.0 * std::numbers::pi * std::numbers::e) + 0.5 * logdet(k).value;
}

MICache::MICache(PointSet v, const HyperParams& params, std::optional<PointSet> g, CacheOptions options)
    : v_(std::move(v)), params_(params), noise_in_diag_(options.noise_in_diag) {
    params_.validate();
    if (v_.is_empty()) throw InvalidInput("build_cache: candidate set is empty");
    jitter_ = options.jitter < 0.0 ? default_jitter(params_) : options.jitter;
    if (!std::isfinite(jitter_)) throw InvalidInput("build_cache: jitter must be finite");
    diag_extra_ = (noise_in_diag_ ? params_.noise_variance : 0.0) + jitter_;

    k_vv_ = cov_matrix(params_, v_, noise_in_diag_, jitter_);
    chol_vv_ = cholesky(k_vv_, 0.0, "K_VV");
    logdet_vv_ = chol_vv_.log_det();

    if (g) {
        if (g->dim() != v_.dim()) throw InvalidInput("build_cache: surrogate dimension differs from candidates");
        if (g->is_empty()) throw InvalidInput("build_cache: surrogate set is empty");
        g_ = std::move(g);
        k_gg_ = cov_matrix(params_, *g_, noise_in_diag_, jitter_);
        const Matrix w = chol_vv_.solve_lower(cov_matrix(params_, v_, *g_));  // L^{-1} K_VG
        k_cond_ = k_gg_;
        k_cond_.selfadjointView<Eigen::Lower>().rankUpdate(w.transpose(), -1.0);
        k_cond_.triangularView<Eigen::StrictlyUpper>() = k_cond_.transpose();
    }
}

const PointSet& MICache::surrogate() const {
    if (!g_) throw InvalidInput("cache holds no surrogate block");
    return *g_;
}

const Matrix& MICache::k_gg() const {
    if (!g_) throw InvalidInput("cache holds no surrogate block");
    return k_gg_;
}

const Matrix& MICache::k_cond() const {
    if (!g_) throw InvalidInput("cache holds no surrogate block");
    return k_cond_;
}

MICache build_cache(const PointSet& v, const HyperParams& params, const std::optional<PointSet>& g,
                    CacheOptions options) {
    return MICache(v, params, g, options);
}

double standard_mi(std::span<const Index> a, const MICache& cache, bool use_precompute) {
    const Index m = cache.candidates().size();
    check_indices(a, m, "standard_mi");

    std::vector<char> in_a(static_cast<std::size_t>(m), 0);
    for (Index i : a) in_a[static_cast<std::size_t>(i)] = 1;
    IndexList rest;
    rest.reserve(static_cast<std::size_t>(m) - a.size());
    for (Index i = 0; i < m; ++i) {
        if (!in_a[static_cast<std::size_t>(i)]) rest.push_back(i);
    }

    const Matrix& k = cache.k_vv();
    const double ld_a = logdet_spd(gather(k, a), "K_AA");
    const double ld_rest = rest.empty() ? 0.0 : logdet_spd(gather(k, rest), "K_(V\\A)(V\\A)");
    const double ld_v = use_precompute ? cache.logdet_vv() : logdet_spd(k, "K_VV");
    return 0.5 * (ld_a + ld_rest - ld_v);
}

double union_mi(const PointSet& a, const MICache& cache) {
    const PointSet& v = cache.candidates();
    if (a.is_empty()) throw InvalidInput("union_mi: selected set must be nonempty");
    if (a.dim() != v.dim()) throw InvalidInput("union_mi: dimension mismatch");

    IndexList extra;
    for (Index i = 0; i < a.size(); ++i) {
        bool shared = false;
        for (Index j = 0; j < v.size() && !shared; ++j) shared = (a.row(i) == v.row(j));
        if (!shared) extra.push_back(i);
    }
    Matrix u(v.size() + static_cast<Index>(extra.size()), v.dim());
    u.topRows(v.size()) = v.coords();
    for (std::size_t k = 0; k < extra.size(); ++k) u.row(v.size() + static_cast<Index>(k)) = a.row(extra[k]);
    const PointSet joint(std::move(u));

    const HyperParams& p = cache.params();
    const double ld_a = logdet_spd(cov_matrix(p, a, cache.noise_in_diag(), cache.jitter()), "K_AA");
    const double ld_u = logdet_spd(cov_matrix(p, joint, cache.noise_in_diag(), cache.jitter()), "K_(AuV)(AuV)");
    return 0.5 * (ld_a + cache.logdet_vv() - ld_u);
}

double schur_mi(std::span<const Index> a, const MICache& cache) {
    const Matrix& k_gg = cache.k_gg();
    check_indices(a, k_gg.rows(), "schur_mi");
    const double ld_a = logdet_spd(gather(k_gg, a), "K_AA");
    const double ld_cond = logdet_spd(gather(cache.k_cond(), a), "K_A|V");
    return 0.5 * (ld_a - ld_cond);
}

double schur_mi(const PointSet& a, const MICache& cache) {
    if (a.is_empty()) throw InvalidInput("schur_mi: selected set must be nonempty");
    if (a.dim() != cache.candidates().dim()) throw InvalidInput("schur_mi: dimension mismatch");
    const HyperParams& p = cache.params();
    const Matrix k_aa = cov_matrix(p, a, cache.noise_in_diag(), cache.jitter());
    const Matrix w = cache.chol_vv().solve_lower(cov_matrix(p, cache.candidates(), a));
    Matrix cond = k_aa;
    cond.selfadjointView<Eigen::Lower>().rankUpdate(w.transpose(), -1.0);
    return 0.5 * (logdet_spd(k_aa, "K_AA") - logdet_spd(cond, "K_A|V"));
}

}  // namespace schurmi
