#include "schurmi/select.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <random>

#include "schurmi/error.hpp"

namespace schurmi {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

[[noreturn]] void rethrow_at_step(const Error& e, Index step) {
    const std::string what = "selection step " + std::to_string(step) + ": " + e.what();
    if (const auto* sm = dynamic_cast<const SingularMatrix*>(&e)) throw SingularMatrix(what, sm->pivot());
    throw Error(e.code(), what);
}

void check_request(const ObjectiveSpec& spec, const PointSet& domain, const MICache& cache, Index s) {
    const Index n = domain_size(spec, cache);
    if (domain.size() != n) throw InvalidInput("selection domain does not match the objective's cached set");
    if (s < 1 || s > n) {
        throw InvalidInput("requested " + std::to_string(s) + " sensors from a domain of " + std::to_string(n));
    }
}

void finish(SelectionResult& r, const PointSet& domain) {
    r.points = domain.subset(r.order);
    r.selection_time = 0.0;
    for (double t : r.wall_times) r.selection_time += t;
}

}  // namespace

SurrogateSet make_surrogate(const PointSet& v, double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidInput("surrogate sigma must be finite and >= 0");
    if (sigma == 0.0) return SurrogateSet{v, sigma, seed};
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> eps(0.0, sigma);
    Matrix g = v.coords();
    for (Index i = 0; i < g.rows(); ++i) {
        for (Index k = 0; k < g.cols(); ++k) g(i, k) += eps(rng);
    }
    return SurrogateSet{PointSet(std::move(g)), sigma, seed};
}

double default_surrogate_sigma(const PointSet& v) {
    const Index m = v.size();
    if (m < 2) return 1e-3;
    std::vector<double> nn(static_cast<std::size_t>(m), std::numeric_limits<double>::infinity());
    for (Index i = 0; i < m; ++i) {
        for (Index j = i + 1; j < m; ++j) {
            const double d = (v.row(i) - v.row(j)).norm();
            nn[static_cast<std::size_t>(i)] = std::min(nn[static_cast<std::size_t>(i)], d);
            nn[static_cast<std::size_t>(j)] = std::min(nn[static_cast<std::size_t>(j)], d);
        }
    }
    const auto mid = nn.begin() + static_cast<std::ptrdiff_t>(nn.size() / 2);
    std::nth_element(nn.begin(), mid, nn.end());
    double median = *mid;
    if (nn.size() % 2 == 0) median = 0.5 * (median + *std::max_element(nn.begin(), mid));
    return 1e-3 * median;
}

SelectionResult greedy(const ObjectiveSpec& spec, const PointSet& domain, const MICache& cache, Index s) {
    check_request(spec, domain, cache, s);
    const Index n = domain.size();
    SelectionResult r;
    std::vector<char> taken(static_cast<std::size_t>(n), 0);
    double base = evaluate(spec, r.order, cache);

    for (Index step = 0; step < s; ++step) {
        const auto t0 = Clock::now();
        Index best = -1;
        double best_gain = -std::numeric_limits<double>::infinity();
        try {
            for (Index a = 0; a < n; ++a) {
                if (taken[static_cast<std::size_t>(a)]) continue;
                const double gain = marginal_gain(spec, r.order, a, base, cache);
                ++r.eval_count;
                if (best < 0 || gain > best_gain) {
                    best = a;
                    best_gain = gain;
                }
            }
            r.order.push_back(best);
            taken[static_cast<std::size_t>(best)] = 1;
            base = evaluate(spec, r.order, cache);
        } catch (const Error& e) {
            rethrow_at_step(e, step);
        }
        r.gains.push_back(best_gain);
        r.objective_trajectory.push_back(base);
        r.wall_times.push_back(seconds_since(t0));
    }
    finish(r, domain);
    return r;
}

SelectionResult lazy_greedy(const ObjectiveSpec& spec, const PointSet& domain, const MICache& cache, Index s) {
    check_request(spec, domain, cache, s);
    const Index n = domain.size();

    struct Entry {
        double bound;
        Index index;
        Index round;  // -1: never scored
    };
    // max-heap on bound, ties resolved toward the lower index
    auto lower_priority = [](const Entry& x, const Entry& y) {
        if (x.bound != y.bound) return x.bound < y.bound;
        return x.index > y.index;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(lower_priority)> heap(lower_priority);
    for (Index a = 0; a < n; ++a) heap.push(Entry{std::numeric_limits<double>::infinity(), a, -1});

    SelectionResult r;
    double base = evaluate(spec, r.order, cache);
    for (Index step = 0; step < s; ++step) {
        const auto t0 = Clock::now();
        double gain = 0.0;
        try {
            for (;;) {
                Entry top = heap.top();
                heap.pop();
                if (top.round == step) {
                    r.order.push_back(top.index);
                    gain = top.bound;
                    break;
                }
                top.bound = marginal_gain(spec, r.order, top.index, base, cache);
                top.round = step;
                ++r.eval_count;
                heap.push(top);
            }
            base = evaluate(spec, r.order, cache);
        } catch (const Error& e) {
            rethrow_at_step(e, step);
        }
        r.gains.push_back(gain);
        r.objective_trajectory.push_back(base);
        r.wall_times.push_back(seconds_since(t0));
    }
    finish(r, domain);
    return r;
}

SelectionResult select_sensors(const PointSet& v, const HyperParams& params, const ObjectiveSpec& spec, Index s,
                               const SelectOptions& options) {
    if (s < 0 || s > v.size()) throw InvalidInput("requested sensor count exceeds the candidate set");
    SelectionResult r;
    std::optional<PointSet> g;
    if (spec.kind == ObjectiveKind::kSchurMI) {
        const double sigma = options.sigma.value_or(default_surrogate_sigma(v));
        if (sigma == 0.0) {
            r.warnings.emplace_back(
                "surrogate sigma is 0: the selected set lies inside V and I(A;V) degenerates to the entropy of A");
        }
        g = make_surrogate(v, sigma, options.seed).g;
    }
    if (s == 0) {
        r.points = PointSet::empty(v.dim());
        return r;
    }

    const auto t0 = Clock::now();
    const MICache cache(v, params, g, CacheOptions{spec.noise_in_diag});
    const double build = seconds_since(t0);

    const PointSet& domain = g ? *g : v;
    SelectionResult sel = options.lazy ? lazy_greedy(spec, domain, cache, s) : greedy(spec, domain, cache, s);
    sel.cache_build_time = build;
    sel.warnings.insert(sel.warnings.begin(), r.warnings.begin(), r.warnings.end());
    return sel;
}

}  // namespace schurmi
