#include "schurmi/gp.hpp"

#include <cmath>

#include "schurmi/error.hpp"
#include "schurmi/kernel.hpp"
#include "schurmi/linalg.hpp"

namespace schurmi {

Posterior posterior(const HyperParams& params, const PointSet& train_x, const Vector& train_y,
                    const PointSet& test_x, std::optional<double> jitter) {
    params.validate();
    if (train_x.is_empty() || train_y.size() != train_x.size()) {
        throw InvalidInput("posterior: need >= 1 training point with matching targets");
    }
    if (train_x.dim() != test_x.dim()) throw InvalidInput("posterior: dimension mismatch");
    if (!train_y.allFinite()) throw InvalidInput("posterior: non-finite targets");

    const double j = jitter.value_or(default_jitter(params));
    const Matrix k_nn = cov_matrix(params, train_x, true, j);
    const CholeskyFactor chol = cholesky(k_nn, 0.0, "K_nn + noise");
    const Matrix k_ns = cov_matrix(params, train_x, test_x);

    const Vector alpha = chol.solve(train_y);
    const Matrix w = chol.solve_lower(k_ns);  // L^{-1} K_n*

    Posterior out;
    out.mean = k_ns.transpose() * alpha;
    out.variance = (Vector::Constant(test_x.size(), params.signal_variance) - w.colwise().squaredNorm().transpose());
    for (Index i = 0; i < out.variance.size(); ++i) {
        double& v = out.variance[i];
        if (v < -1e-9) throw SingularMatrix("posterior variance " + std::to_string(v) + " below -1e-9", i);
        if (v < 0.0) v = 0.0;
    }
    return out;
}

double population_variance(const Vector& values) {
    if (values.size() == 0) throw InvalidInput("variance of an empty vector");
    const double mu = values.mean();
    return (values.array() - mu).square().mean();
}

Metrics metrics(const Posterior& pred, const Vector& truth, double truth_variance) {
    if (pred.mean.size() != truth.size()) throw InvalidInput("metrics: prediction/truth length mismatch");
    if (truth.size() == 0) throw InvalidInput("metrics: empty test set");
    if (!(truth_variance > 0.0) || !std::isfinite(truth_variance)) throw InvalidInput("metrics: truth_variance must be > 0");
    const double mse = (pred.mean - truth).squaredNorm() / static_cast<double>(truth.size());
    return Metrics{mse / truth_variance, std::sqrt(mse), truth.size()};
}

}  // namespace schurmi
