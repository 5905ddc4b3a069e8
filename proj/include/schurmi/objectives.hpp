#pragma once

#include <span>
#include <string>
#include <string_view>

#include "schurmi/mi.hpp"

namespace schurmi {

enum class ObjectiveKind { kStandardMI, kSchurMI, kAOpt, kBOpt, kDOpt };

std::string_view to_string(ObjectiveKind kind) noexcept;
/// Accepts "standard_mi", "schur_mi", "a_opt", "b_opt", "d_opt".
ObjectiveKind parse_objective_kind(std::string_view name);

struct ObjectiveSpec {
    ObjectiveKind kind = ObjectiveKind::kSchurMI;
    /// Only standard_mi distinguishes the two; the other kinds always use the cache.
    bool precompute = true;
    bool noise_in_diag = true;

    [[nodiscard]] bool is_mi() const noexcept {
        return kind == ObjectiveKind::kStandardMI || kind == ObjectiveKind::kSchurMI;
    }
};

/// Number of selectable items: rows of G for schur_mi, rows of V otherwise.
Index domain_size(const ObjectiveSpec& spec, const MICache& cache);

/// Larger is better for every kind. An empty selection scores 0 for the MI
/// kinds and the prior value for the design criteria.
///
/// Design criteria act on the posterior covariance of V given noisy
/// observations at A,
///   S = K_VV - K_VA (K_AA + noise I)^{-1} K_AV   (latent K, jitter on the solve)
///   a_opt = -trace(S)
///   b_opt = trace(K_VA (K_AA + noise I)^{-1} K_AV)
///   d_opt = -ln det(S + jitter I)
double evaluate(const ObjectiveSpec& spec, std::span<const Index> a, const MICache& cache);

/// evaluate(spec, a + {candidate}) - base_value.
double marginal_gain(const ObjectiveSpec& spec, std::span<const Index> a, Index candidate, double base_value,
                     const MICache& cache);

}  // namespace schurmi
