#pragma once

#include <optional>
#include <span>

#include "schurmi/linalg.hpp"
#include "schurmi/types.hpp"

namespace schurmi {

/// Differential entropy of a zero-mean Gaussian with covariance k:
/// (s/2) ln(2 pi e) + (1/2) ln det k.
double entropy(const Eigen::Ref<const Matrix>& k);

struct CacheOptions {
    /// Fold noise_variance into every square self-covariance diagonal.
    bool noise_in_diag = true;
    /// Diagonal jitter; negative selects default_jitter(params).
    double jitter = -1.0;
};

/// Factors over the candidate set V that do not depend on the selected set,
/// plus (optionally) the conditional covariance K_{G|V} of a fixed surrogate
/// set G. Immutable once built; safe to share across threads.
class MICache {
public:
    MICache(PointSet v, const HyperParams& params, std::optional<PointSet> g = std::nullopt,
            CacheOptions options = {});

    [[nodiscard]] const PointSet& candidates() const noexcept { return v_; }
    [[nodiscard]] const HyperParams& params() const noexcept { return params_; }
    [[nodiscard]] bool noise_in_diag() const noexcept { return noise_in_diag_; }
    [[nodiscard]] double jitter() const noexcept { return jitter_; }
    /// noise (if folded) + jitter; what every square self-covariance carries on its diagonal.
    [[nodiscard]] double diag_extra() const noexcept { return diag_extra_; }

    /// K_VV including diag_extra().
    [[nodiscard]] const Matrix& k_vv() const noexcept { return k_vv_; }
    [[nodiscard]] const CholeskyFactor& chol_vv() const noexcept { return chol_vv_; }
    [[nodiscard]] double logdet_vv() const noexcept { return logdet_vv_; }

    [[nodiscard]] bool has_surrogate() const noexcept { return g_.has_value(); }
    /// Throw InvalidInput when no surrogate block was built.
    [[nodiscard]] const PointSet& surrogate() const;
    [[nodiscard]] const Matrix& k_gg() const;
    [[nodiscard]] const Matrix& k_cond() const;

private:
    PointSet v_;
    HyperParams params_;
    bool noise_in_diag_;
    double jitter_;
    double diag_extra_;
    Matrix k_vv_;
    CholeskyFactor chol_vv_;
    double logdet_vv_;
    std::optional<PointSet> g_;
    Matrix k_gg_;
    Matrix k_cond_;
};

MICache build_cache(const PointSet& v, const HyperParams& params, const std::optional<PointSet>& g = std::nullopt,
                    CacheOptions options = {});

/// I(A; V \ A) = 1/2 [ln det K_AA + ln det K_{V\A,V\A} - ln det K_VV] with A
/// given as indices into V. With use_precompute the K_VV term is read from the
/// cache, otherwise it is refactorized.
double standard_mi(std::span<const Index> a, const MICache& cache, bool use_precompute);

/// I(A; V) = 1/2 [ln det K_AA + ln det K_VV - ln det K_{A u V}] with the union
/// covariance formed explicitly. Rows of A that coincide exactly with a row of
/// V are the same variable and are not duplicated in the union. Cost is cubic
/// in |A| + |V|.
double union_mi(const PointSet& a, const MICache& cache);

/// I(A; V) = 1/2 [ln det K_AA - ln det K_{A|V}] for A given as indices into
/// the cached surrogate set G. Gathers s x s blocks of K_GG and K_{G|V}; no
/// factorization larger than s x s.
double schur_mi(std::span<const Index> a, const MICache& cache);

/// Same objective for arbitrary points: K_{A|V} = K_AA - W^T W with
/// W = L_VV^{-1} K_VA, cost O(m^2 s).
double schur_mi(const PointSet& a, const MICache& cache);

}  // namespace schurmi
