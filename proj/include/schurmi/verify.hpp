#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "schurmi/types.hpp"

namespace schurmi {

/// Uniform points in the unit square.
PointSet random_points(std::mt19937_64& rng, Index m, Index dim = 2);

/// signal_variance in [0.5, 2], length_scale in [0.15, 0.6],
/// noise_variance in [0.01, 0.1] * signal_variance.
HyperParams random_hyperparams(std::mt19937_64& rng);

struct CheckOutcome {
    std::string name;
    int runs = 0;
    int failures = 0;
    double worst = 0.0;      // largest discrepancy observed
    double tolerance = 0.0;  // discrepancy above this is a failure
};

struct VerifySummary {
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<CheckOutcome> checks;

    [[nodiscard]] bool passed() const;
};

/// Randomized self-checks of the MI formulations and selectors:
/// Schur determinant identity, formulation equivalence, precompute
/// transparency, degeneracy of the union form, greedy vs. exhaustive
/// optimum, lazy vs. plain greedy. Each check runs `trials` instances.
/// Failures are reported, not thrown; trials < 1 throws InvalidInput.
VerifySummary verify(std::uint64_t seed, int trials);

nlohmann::json summary_to_json(const VerifySummary& summary);

}  // namespace schurmi
