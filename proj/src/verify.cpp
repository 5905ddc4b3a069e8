#include "schurmi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "schurmi/error.hpp"
#include "schurmi/kernel.hpp"
#include "schurmi/mi.hpp"
#include "schurmi/objectives.hpp"
#include "schurmi/select.hpp"

namespace schurmi {
namespace {

Index uniform_int(std::mt19937_64& rng, Index lo, Index hi) {
    return lo + static_cast<Index>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

IndexList sample_without_replacement(std::mt19937_64& rng, Index n, Index k) {
    IndexList all(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    for (Index i = 0; i < k; ++i) {
        const Index j = uniform_int(rng, i, n - 1);
        std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]);
    }
    all.resize(static_cast<std::size_t>(k));
    return all;
}

void record(CheckOutcome& c, double discrepancy) {
    ++c.runs;
    if (!(discrepancy <= c.tolerance)) ++c.failures;
    if (std::isnan(discrepancy)) discrepancy = std::numeric_limits<double>::infinity();
    c.worst = std::max(c.worst, discrepancy);
}

// Best I(A;V) over all size-s subsets of the surrogate domain.
double exhaustive_optimum(const MICache& cache, Index s) {
    const Index n = cache.k_gg().rows();
    IndexList pick(static_cast<std::size_t>(s));
    for (Index i = 0; i < s; ++i) pick[static_cast<std::size_t>(i)] = i;
    double best = -std::numeric_limits<double>::infinity();
    for (;;) {
        best = std::max(best, schur_mi(pick, cache));
        Index i = s - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - s + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (Index k = i + 1; k < s; ++k) pick[static_cast<std::size_t>(k)] = pick[static_cast<std::size_t>(k - 1)] + 1;
    }
    return best;
}

}  // namespace

PointSet random_points(std::mt19937_64& rng, Index m, Index dim) {
    Matrix x(m, dim);
    for (Index i = 0; i < m; ++i) {
        for (Index k = 0; k < dim; ++k) x(i, k) = uniform_real(rng, 0.0, 1.0);
    }
    return PointSet(std::move(x));
}

HyperParams random_hyperparams(std::mt19937_64& rng) {
    HyperParams p;
    p.signal_variance = uniform_real(rng, 0.5, 2.0);
    p.length_scale = uniform_real(rng, 0.15, 0.6);
    p.noise_variance = uniform_real(rng, 0.01, 0.1) * p.signal_variance;
    return p;
}

bool VerifySummary::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.failures == 0; });
}

VerifySummary verify(std::uint64_t seed, int trials) {
    if (trials < 1) throw InvalidInput("verify needs trials >= 1");
    VerifySummary out;
    out.seed = seed;
    out.trials = trials;

    {
        CheckOutcome c{"schur_identity", 0, 0, 0.0, 1e-8};
        std::mt19937_64 rng(seed ^ 0x01);
        for (int t = 0; t < trials; ++t) {
            const HyperParams p = random_hyperparams(rng);
            const Index m = uniform_int(rng, 3, 20);
            const Index s = uniform_int(rng, 1, 5);
            const PointSet v = random_points(rng, m);
            const PointSet a = random_points(rng, s);
            const MICache cache(v, p);
            Matrix u(m + s, 2);
            u << v.coords(), a.coords();
            const double ld_union = logdet(cov_matrix(p, PointSet(u), true, cache.jitter())).value;
            const Matrix w = cache.chol_vv().solve_lower(cov_matrix(p, v, a));
            const Matrix cond = cov_matrix(p, a, true, cache.jitter()) - w.transpose() * w;
            const double ld_cond = logdet_spd(cond);
            record(c, std::abs(ld_union - (cache.logdet_vv() + ld_cond)));
        }
        out.checks.push_back(c);
    }
    {
        CheckOutcome c{"formulation_equivalence", 0, 0, 0.0, 1e-8};
        std::mt19937_64 rng(seed ^ 0x02);
        for (int t = 0; t < trials; ++t) {
            const HyperParams p = random_hyperparams(rng);
            const Index s = uniform_int(rng, 1, 8);
            const Index m = uniform_int(rng, 2, 25 - s);
            const PointSet v = random_points(rng, m);
            const PointSet g = random_points(rng, s + uniform_int(rng, 0, 4));
            const MICache cache(v, p, g);
            const IndexList idx = sample_without_replacement(rng, g.size(), s);
            const PointSet a = g.subset(idx);
            const double discrete = schur_mi(idx, cache);
            const double continuous = schur_mi(a, cache);
            const double via_union = union_mi(a, cache);
            Matrix u(m + s, 2);
            u << v.coords(), a.coords();
            const double via_entropy = entropy(cov_matrix(p, a, true, cache.jitter())) +
                                       entropy(cov_matrix(p, v, true, cache.jitter())) -
                                       entropy(cov_matrix(p, PointSet(u), true, cache.jitter()));
            record(c, std::max({std::abs(discrete - via_union), std::abs(discrete - via_entropy),
                                std::abs(discrete - continuous)}));
        }
        out.checks.push_back(c);
    }
    {
        CheckOutcome c{"precompute_transparency", 0, 0, 0.0, 1e-10};
        std::mt19937_64 rng(seed ^ 0x03);
        for (int t = 0; t < trials; ++t) {
            const HyperParams p = random_hyperparams(rng);
            const Index m = uniform_int(rng, 2, 25);
            const MICache cache(random_points(rng, m), p);
            const IndexList idx = sample_without_replacement(rng, m, uniform_int(rng, 1, m));
            record(c, std::abs(standard_mi(idx, cache, true) - standard_mi(idx, cache, false)));
        }
        out.checks.push_back(c);
    }
    {
        CheckOutcome c{"degeneracy", 0, 0, 0.0, 1e-4};
        std::mt19937_64 rng(seed ^ 0x04);
        for (int t = 0; t < trials; ++t) {
            const HyperParams p = random_hyperparams(rng);
            const Index m = uniform_int(rng, 2, 20);
            const PointSet v = random_points(rng, m);
            const MICache cache(v, p);
            const PointSet a = v.subset(sample_without_replacement(rng, m, uniform_int(rng, 1, m)));
            const double entropy_part = 0.5 * logdet(cov_matrix(p, a, true, cache.jitter())).value;
            record(c, std::abs(union_mi(a, cache) - entropy_part));
        }
        out.checks.push_back(c);
    }
    {
        // discrepancy is the shortfall below (1 - 1/e) of the exhaustive optimum
        CheckOutcome c{"greedy_vs_exhaustive", 0, 0, 0.0, 1e-8};
        std::mt19937_64 rng(seed ^ 0x05);
        const ObjectiveSpec spec{ObjectiveKind::kSchurMI};
        for (int t = 0; t < trials; ++t) {
            const HyperParams p = random_hyperparams(rng);
            const Index m = uniform_int(rng, 4, 10);
            const Index s = uniform_int(rng, 1, std::min<Index>(4, m));
            const PointSet v = random_points(rng, m);
            const PointSet g = make_surrogate(v, default_surrogate_sigma(v), rng()).g;
            const MICache cache(v, p, g);
            const double got = greedy(spec, g, cache, s).objective_trajectory.back();
            const double bound = (1.0 - 1.0 / std::numbers::e) * exhaustive_optimum(cache, s);
            record(c, std::max(0.0, bound - got));
        }
        out.checks.push_back(c);
    }
    {
        // an order mismatch is an infinite discrepancy; otherwise the largest gain difference
        CheckOutcome c{"lazy_vs_greedy", 0, 0, 0.0, 1e-9};
        std::mt19937_64 rng(seed ^ 0x06);
        const ObjectiveSpec spec{ObjectiveKind::kSchurMI};
        for (int t = 0; t < trials; ++t) {
            const HyperParams p = random_hyperparams(rng);
            const Index m = uniform_int(rng, 5, 30);
            const Index s = uniform_int(rng, 1, std::min<Index>(10, m));
            const PointSet v = random_points(rng, m);
            const PointSet g = make_surrogate(v, default_surrogate_sigma(v), rng()).g;
            const MICache cache(v, p, g);
            const SelectionResult plain = greedy(spec, g, cache, s);
            const SelectionResult lazy = lazy_greedy(spec, g, cache, s);
            double diff = 0.0;
            if (plain.order != lazy.order || lazy.eval_count > plain.eval_count) {
                diff = std::numeric_limits<double>::infinity();
            } else {
                for (std::size_t k = 0; k < plain.gains.size(); ++k) {
                    diff = std::max(diff, std::abs(plain.gains[k] - lazy.gains[k]));
                }
            }
            record(c, diff);
        }
        out.checks.push_back(c);
    }
    return out;
}

nlohmann::json summary_to_json(const VerifySummary& summary) {
    nlohmann::json j;
    j["seed"] = summary.seed;
    j["trials"] = summary.trials;
    j["passed"] = summary.passed();
    j["checks"] = nlohmann::json::array();
    for (const CheckOutcome& c : summary.checks) {
        j["checks"].push_back(nlohmann::json{{"name", c.name},
                                             {"runs", c.runs},
                                             {"failures", c.failures},
                                             {"worst_discrepancy", std::isinf(c.worst) ? nlohmann::json("inf") : nlohmann::json(c.worst)},
                                             {"tolerance", c.tolerance}});
    }
    return j;
}

}  // namespace schurmi
