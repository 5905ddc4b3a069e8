#pragma once

#include <optional>

#include "schurmi/types.hpp"

namespace schurmi {

struct Posterior {
    Vector mean;
    Vector variance;
};

struct Metrics {
    double smse = 0.0;
    double rmse = 0.0;
    Index n_test = 0;
};

/// Zero-mean GP posterior at test_x given noisy observations (train_x, train_y).
/// Factorizes K_nn + (noise_variance + jitter) I; jitter defaults to
/// default_jitter(params). Variances in [-1e-9, 0) are clamped to zero, more
/// negative values throw SingularMatrix.
Posterior posterior(const HyperParams& params, const PointSet& train_x, const Vector& train_y,
                    const PointSet& test_x, std::optional<double> jitter = std::nullopt);

/// SMSE = MSE / truth_variance, RMSE = sqrt(MSE).
Metrics metrics(const Posterior& pred, const Vector& truth, double truth_variance);

/// Population variance (divide by n).
double population_variance(const Vector& values);

}  // namespace schurmi
