#include "schurmi/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "schurmi/error.hpp"
#include "schurmi/linalg.hpp"

namespace schurmi {
namespace {

inline double rbf(double signal_variance, double inv_two_l2, const double* a, const double* b, Index stride_a,
                  Index stride_b, Index dim) {
    double r2 = 0.0;
    for (Index k = 0; k < dim; ++k) {
        const double diff = a[k * stride_a] - b[k * stride_b];
        r2 += diff * diff;
    }
    return signal_variance * std::exp(-r2 * inv_two_l2);
}

}  // namespace

double kernel_eval(const HyperParams& params, const Eigen::Ref<const Eigen::RowVectorXd>& x,
                   const Eigen::Ref<const Eigen::RowVectorXd>& x_prime) {
    params.validate();
    if (x.size() != x_prime.size()) throw InvalidInput("kernel_eval: dimension mismatch");
    if (!x.allFinite() || !x_prime.allFinite()) throw InvalidInput("kernel_eval: non-finite input");
    double r2 = 0.0;
    for (Index k = 0; k < x.size(); ++k) {
        const double diff = x[k] - x_prime[k];
        r2 += diff * diff;
    }
    return params.signal_variance * std::exp(-r2 / (2.0 * params.length_scale * params.length_scale));
}

Matrix cov_matrix(const HyperParams& params, const PointSet& x, const PointSet& y) {
    params.validate();
    if (x.dim() != y.dim()) throw InvalidInput("cov_matrix: dimension mismatch");
    const double inv = 1.0 / (2.0 * params.length_scale * params.length_scale);
    const Matrix& a = x.coords();
    const Matrix& b = y.coords();
    Matrix k(a.rows(), b.rows());
    // column-major storage: fill column by column
    for (Index j = 0; j < b.rows(); ++j) {
        for (Index i = 0; i < a.rows(); ++i) {
            k(i, j) = rbf(params.signal_variance, inv, a.data() + i, b.data() + j, a.rows(), b.rows(), a.cols());
        }
    }
    return k;
}

Matrix cov_matrix(const HyperParams& params, const PointSet& x, bool add_noise, double jitter) {
    params.validate();
    if (!(jitter >= 0.0) || !std::isfinite(jitter)) throw InvalidInput("jitter must be finite and >= 0");
    const double inv = 1.0 / (2.0 * params.length_scale * params.length_scale);
    const Matrix& a = x.coords();
    const Index n = a.rows();
    Matrix k(n, n);
    const double diag = params.signal_variance + (add_noise ? params.noise_variance : 0.0) + jitter;
    for (Index j = 0; j < n; ++j) {
        k(j, j) = diag;
        for (Index i = j + 1; i < n; ++i) {
            const double v = rbf(params.signal_variance, inv, a.data() + i, a.data() + j, n, n, a.cols());
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

Matrix cov_matrix(const HyperParams& params, const PointSet& x, const PointSet& y, bool add_noise,
                  double jitter) {
    if (&x == &y) return cov_matrix(params, x, add_noise, jitter);
    return cov_matrix(params, x, y);
}

double log_marginal_likelihood(const HyperParams& params, const PointSet& x, const Vector& y, double jitter) {
    if (y.size() != x.size()) throw InvalidInput("log_marginal_likelihood: size mismatch");
    const Matrix k = cov_matrix(params, x, true, jitter);
    const CholeskyFactor chol = cholesky(k, 0.0, "K_nn + noise");
    const Vector alpha = chol.solve(y);
    const double n = static_cast<double>(y.size());
    return -0.5 * y.dot(alpha) - 0.5 * chol.log_det() - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

namespace {

using LogPoint = std::array<double, 3>;

struct BoundedObjective {
    const PointSet& x;
    const Vector& y;
    FitBounds bounds;
    LogPoint start;
    HyperParams init;
    int evals = 0;

    std::array<Interval, 3> log_bounds() const {
        return {Interval{std::log(bounds.signal_variance.lo), std::log(bounds.signal_variance.hi)},
                Interval{std::log(bounds.length_scale.lo), std::log(bounds.length_scale.hi)},
                Interval{std::log(bounds.noise_variance.lo), std::log(bounds.noise_variance.hi)}};
    }

    LogPoint clamp(LogPoint p) const {
        const auto lb = log_bounds();
        for (std::size_t i = 0; i < 3; ++i) p[i] = std::clamp(p[i], lb[i].lo, lb[i].hi);
        return p;
    }

    static HyperParams to_params(const LogPoint& p, const FitBounds& b) {
        // exp(log(v)) may round just outside the interval
        return HyperParams{std::clamp(std::exp(p[0]), b.signal_variance.lo, b.signal_variance.hi),
                           std::clamp(std::exp(p[1]), b.length_scale.lo, b.length_scale.hi),
                           std::clamp(std::exp(p[2]), b.noise_variance.lo, b.noise_variance.hi)};
    }

    // Negative log likelihood; +inf when the probe cannot be factorized.
    double operator()(const LogPoint& p) {
        ++evals;
        // the start vertex is scored at init exactly, not at exp(log(init))
        const HyperParams hp = p == start ? init : to_params(p, bounds);
        try {
            const double ll = log_marginal_likelihood(hp, x, y, default_jitter(hp));
            return std::isfinite(ll) ? -ll : std::numeric_limits<double>::infinity();
        } catch (const SingularMatrix&) {
            return std::numeric_limits<double>::infinity();
        }
    }
};

}  // namespace

HyperParams fit_hyperparams(const PointSet& train_x, const Vector& train_y, const HyperParams& init,
                            const FitBounds& bounds, int max_evals) {
    init.validate();
    if (train_x.size() < 2 || train_y.size() != train_x.size()) {
        throw InvalidInput("fit_hyperparams needs >= 2 training points with matching targets");
    }
    if (max_evals < 1) throw InvalidInput("max_evals must be >= 1");
    for (const Interval& iv : {bounds.signal_variance, bounds.length_scale, bounds.noise_variance}) {
        if (!(iv.lo > 0.0) || !(iv.hi >= iv.lo) || !std::isfinite(iv.hi)) {
            throw InvalidInput("fit bounds must be finite positive intervals");
        }
    }
    if (!bounds.signal_variance.contains(init.signal_variance) || !bounds.length_scale.contains(init.length_scale) ||
        !bounds.noise_variance.contains(init.noise_variance)) {
        throw InvalidInput("initial hyperparameters lie outside the fit bounds");
    }

    const LogPoint start{std::log(init.signal_variance), std::log(init.length_scale), std::log(init.noise_variance)};
    BoundedObjective f{train_x, train_y, bounds, start, init};

    // Initial simplex: start plus one step of ln(2) along each axis, reflected
    // inward when the step would leave the box.
    const auto lb = f.log_bounds();
    std::array<LogPoint, 4> simplex{};
    std::array<double, 4> cost{};
    simplex[0] = start;
    for (std::size_t i = 0; i < 3; ++i) {
        LogPoint p = simplex[0];
        const double step = std::log(2.0);
        p[i] = (p[i] + step <= lb[i].hi) ? p[i] + step : p[i] - step;
        simplex[i + 1] = f.clamp(p);
    }
    for (std::size_t i = 0; i < 4; ++i) cost[i] = f(simplex[i]);

    LogPoint best = simplex[0];
    double best_cost = cost[0];
    auto track = [&](const LogPoint& p, double c) {
        if (c < best_cost) {
            best_cost = c;
            best = p;
        }
    };
    for (std::size_t i = 1; i < 4; ++i) track(simplex[i], cost[i]);

    auto combine = [&](const LogPoint& centroid, const LogPoint& worst, double t) {
        LogPoint p{};
        for (std::size_t k = 0; k < 3; ++k) p[k] = centroid[k] + t * (worst[k] - centroid[k]);
        return f.clamp(p);
    };

    while (f.evals < max_evals) {
        std::array<std::size_t, 4> order{};
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cost[a] < cost[b]; });
        const std::size_t lo = order[0];
        const std::size_t second_worst = order[2];
        const std::size_t hi = order[3];

        double spread = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t k = 0; k < 3; ++k) spread = std::max(spread, std::abs(simplex[i][k] - simplex[lo][k]));
        }
        if (spread < 1e-6) break;

        LogPoint centroid{};
        for (std::size_t i = 0; i < 4; ++i) {
            if (i == hi) continue;
            for (std::size_t k = 0; k < 3; ++k) centroid[k] += simplex[i][k] / 3.0;
        }

        const LogPoint reflected = combine(centroid, simplex[hi], -1.0);
        const double fr = f(reflected);
        track(reflected, fr);
        if (fr < cost[lo]) {
            const LogPoint expanded = combine(centroid, simplex[hi], -2.0);
            const double fe = f(expanded);
            track(expanded, fe);
            if (fe < fr) {
                simplex[hi] = expanded;
                cost[hi] = fe;
            } else {
                simplex[hi] = reflected;
                cost[hi] = fr;
            }
            continue;
        }
        if (fr < cost[second_worst]) {
            simplex[hi] = reflected;
            cost[hi] = fr;
            continue;
        }
        const bool outside = fr < cost[hi];
        const LogPoint contracted = combine(centroid, simplex[hi], outside ? -0.5 : 0.5);
        const double fc = f(contracted);
        track(contracted, fc);
        if (fc < std::min(fr, cost[hi])) {
            simplex[hi] = contracted;
            cost[hi] = fc;
            continue;
        }
        // shrink toward the best vertex
        for (std::size_t i = 0; i < 4; ++i) {
            if (i == lo) continue;
            for (std::size_t k = 0; k < 3; ++k) simplex[i][k] = simplex[lo][k] + 0.5 * (simplex[i][k] - simplex[lo][k]);
            cost[i] = f(simplex[i]);
            track(simplex[i], cost[i]);
        }
    }

    if (!std::isfinite(best_cost)) throw Error(ErrorCode::kFittingFailed, "every likelihood probe failed to factorize");
    if (best == start) return init;
    return BoundedObjective::to_params(best, bounds);
}

}  // namespace schurmi
