#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schurmi/objectives.hpp"

namespace schurmi {

struct SurrogateSet {
    PointSet g;
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

/// G = V + eps, eps i.i.d. N(0, sigma^2) per coordinate, drawn row-major from
/// a mt19937_64 seeded with `seed`. sigma == 0 returns V unchanged.
SurrogateSet make_surrogate(const PointSet& v, double sigma, std::uint64_t seed);

/// 1e-3 times the median nearest-neighbour distance within V.
double default_surrogate_sigma(const PointSet& v);

struct SelectionResult {
    IndexList order;                        // indices into the selection domain (G or V)
    PointSet points;                        // domain rows in selection order
    std::vector<double> gains;              // marginal gain of each pick
    std::vector<double> objective_trajectory;  // objective value after each pick
    std::int64_t eval_count = 0;            // marginal-gain evaluations
    std::vector<double> wall_times;         // seconds per step
    double cache_build_time = 0.0;          // seconds, zero unless built by select_sensors
    double selection_time = 0.0;            // seconds, sum of wall_times
    std::vector<std::string> warnings;
};

/// Plain greedy: every round scores each unselected item and keeps the
/// argmax (ties go to the lowest index), then recomputes the base value on
/// the grown set.
SelectionResult greedy(const ObjectiveSpec& spec, const PointSet& domain, const MICache& cache, Index s);

/// Accelerated greedy over a max-heap of stale upper bounds (Minoux). Entries
/// carry the round in which their gain was computed; a popped entry is
/// accepted only if it is fresh for the current round, otherwise it is
/// re-scored and pushed back. Matches greedy() on submodular objectives.
SelectionResult lazy_greedy(const ObjectiveSpec& spec, const PointSet& domain, const MICache& cache, Index s);

struct SelectOptions {
    /// Surrogate perturbation scale; defaults to default_surrogate_sigma(V).
    std::optional<double> sigma;
    std::uint64_t seed = 0;
    bool lazy = false;
};

/// End-to-end placement: surrogate (schur_mi only), cache, then greedy or
/// lazy greedy. Cache build time is reported separately from selection time.
SelectionResult select_sensors(const PointSet& v, const HyperParams& params, const ObjectiveSpec& spec, Index s,
                               const SelectOptions& options = {});

}  // namespace schurmi
