#pragma once

#include "schurmi/types.hpp"

namespace schurmi {

/// Default diagonal stabilization: 1e-6 * signal_variance.
inline double default_jitter(const HyperParams& params) { return 1e-6 * params.signal_variance; }

/// RBF kernel value between two locations of equal dimension.
double kernel_eval(const HyperParams& params, const Eigen::Ref<const Eigen::RowVectorXd>& x,
                   const Eigen::Ref<const Eigen::RowVectorXd>& x_prime);

/// Cross-covariance K(X, Y), entry (i, j) = k(X_i, Y_j). Never adds noise.
Matrix cov_matrix(const HyperParams& params, const PointSet& x, const PointSet& y);

/// Self-covariance K(X, X), upper triangle computed and mirrored so the
/// result is exactly symmetric. Adds noise_variance (when add_noise) plus
/// jitter to the diagonal.
Matrix cov_matrix(const HyperParams& params, const PointSet& x, bool add_noise, double jitter);

/// Dispatching form: when x and y are the same object the self-covariance
/// rules apply, otherwise the plain cross-covariance is returned and
/// add_noise/jitter are ignored.
Matrix cov_matrix(const HyperParams& params, const PointSet& x, const PointSet& y, bool add_noise,
                  double jitter);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] bool contains(double v) const { return v >= lo && v <= hi; }
};

struct FitBounds {
    Interval signal_variance{1e-3, 1e3};
    Interval length_scale{1e-3, 1e3};
    Interval noise_variance{1e-6, 1e1};
};

/// Gaussian log marginal likelihood of y under K + (noise_variance + jitter) I.
/// Throws SingularMatrix if the covariance cannot be factorized.
double log_marginal_likelihood(const HyperParams& params, const PointSet& x, const Vector& y,
                               double jitter);

/// Nelder-Mead over log-parameters inside `bounds`, starting at `init`.
/// Probes whose covariance cannot be factorized score -inf. The returned
/// parameters are never worse than `init` and always inside the bounds.
HyperParams fit_hyperparams(const PointSet& train_x, const Vector& train_y, const HyperParams& init,
                            const FitBounds& bounds, int max_evals = 200);

}  // namespace schurmi
