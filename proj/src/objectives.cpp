#include "schurmi/objectives.hpp"

#include <algorithm>
#include <string>

#include "schurmi/error.hpp"

namespace schurmi {
namespace {

struct DesignTerms {
    Matrix k_va;  // latent K_VA
    Matrix w;     // L_A^{-1} K_AV where L_A L_A^T = K_AA + (noise + jitter) I
};

DesignTerms design_terms(std::span<const Index> a, const MICache& cache) {
    const Index m = cache.candidates().size();
    const auto s = static_cast<Index>(a.size());
    IndexList sorted(a.begin(), a.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 0 || sorted.back() >= m) throw InvalidInput("design criterion: index out of range");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidInput("design criterion: duplicate index");
    }
    // k_vv carries diag_extra on its diagonal; strip it to recover the latent block
    const Matrix& k = cache.k_vv();
    const double extra = cache.diag_extra();
    DesignTerms t;
    t.k_va.resize(m, s);
    for (Index j = 0; j < s; ++j) {
        t.k_va.col(j) = k.col(a[static_cast<std::size_t>(j)]);
        t.k_va(a[static_cast<std::size_t>(j)], j) -= extra;
    }
    Matrix k_aa(s, s);
    for (Index j = 0; j < s; ++j) {
        for (Index i = 0; i < s; ++i) k_aa(i, j) = t.k_va(a[static_cast<std::size_t>(i)], j);
    }
    k_aa.diagonal().array() += cache.params().noise_variance + cache.jitter();
    const CholeskyFactor chol = cholesky(k_aa, 0.0, "K_AA + noise");
    t.w = chol.solve_lower(t.k_va.transpose());
    return t;
}

Matrix latent_k_vv(const MICache& cache) {
    Matrix k = cache.k_vv();
    k.diagonal().array() -= cache.diag_extra();
    return k;
}

}  // namespace

std::string_view to_string(ObjectiveKind kind) noexcept {
    switch (kind) {
        case ObjectiveKind::kStandardMI: return "standard_mi";
        case ObjectiveKind::kSchurMI: return "schur_mi";
        case ObjectiveKind::kAOpt: return "a_opt";
        case ObjectiveKind::kBOpt: return "b_opt";
        case ObjectiveKind::kDOpt: return "d_opt";
    }
    return "unknown";
}

ObjectiveKind parse_objective_kind(std::string_view name) {
    for (ObjectiveKind k : {ObjectiveKind::kStandardMI, ObjectiveKind::kSchurMI, ObjectiveKind::kAOpt,
                            ObjectiveKind::kBOpt, ObjectiveKind::kDOpt}) {
        if (to_string(k) == name) return k;
    }
    throw InvalidInput("unknown objective kind '" + std::string(name) + "'");
}

Index domain_size(const ObjectiveSpec& spec, const MICache& cache) {
    return spec.kind == ObjectiveKind::kSchurMI ? cache.k_gg().rows() : cache.candidates().size();
}

double evaluate(const ObjectiveSpec& spec, std::span<const Index> a, const MICache& cache) {
    if (spec.noise_in_diag != cache.noise_in_diag()) {
        throw InvalidInput("objective noise_in_diag does not match the cache");
    }
    switch (spec.kind) {
        case ObjectiveKind::kStandardMI:
            return a.empty() ? 0.0 : standard_mi(a, cache, spec.precompute);
        case ObjectiveKind::kSchurMI:
            return a.empty() ? 0.0 : schur_mi(a, cache);
        case ObjectiveKind::kAOpt: {
            const double prior = latent_k_vv(cache).trace();
            if (a.empty()) return -prior;
            return -(prior - design_terms(a, cache).w.squaredNorm());
        }
        case ObjectiveKind::kBOpt:
            return a.empty() ? 0.0 : design_terms(a, cache).w.squaredNorm();
        case ObjectiveKind::kDOpt: {
            Matrix post = latent_k_vv(cache);
            if (!a.empty()) {
                const DesignTerms t = design_terms(a, cache);
                post.selfadjointView<Eigen::Lower>().rankUpdate(t.w.transpose(), -1.0);
            }
            post.diagonal().array() += cache.jitter();
            return -logdet_spd(post, "posterior covariance of V");
        }
    }
    throw InvalidInput("unknown objective kind");
}

double marginal_gain(const ObjectiveSpec& spec, std::span<const Index> a, Index candidate, double base_value,
                     const MICache& cache) {
    if (std::find(a.begin(), a.end(), candidate) != a.end()) {
        throw InvalidInput("marginal_gain: candidate already selected");
    }
    IndexList grown(a.begin(), a.end());
    grown.push_back(candidate);
    return evaluate(spec, grown, cache) - base_value;
}

}  // namespace schurmi
