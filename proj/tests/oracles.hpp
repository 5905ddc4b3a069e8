#pragma once

// Reference computations for the test suites. Everything here goes through
// explicit inverses, LU determinants or brute-force enumeration, never through
// the library's Cholesky-based routines.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "schurmi/types.hpp"

namespace oracle {

using schurmi::HyperParams;
using schurmi::Index;
using schurmi::IndexList;
using schurmi::Matrix;
using schurmi::PointSet;
using schurmi::Vector;

inline double rbf(const HyperParams& p, const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b) {
    return p.signal_variance * std::exp(-(a - b).squaredNorm() / (2.0 * p.length_scale * p.length_scale));
}

inline Matrix cross(const HyperParams& p, const PointSet& x, const PointSet& y) {
    Matrix k(x.size(), y.size());
    for (Index i = 0; i < x.size(); ++i) {
        for (Index j = 0; j < y.size(); ++j) k(i, j) = rbf(p, x.row(i), y.row(j));
    }
    return k;
}

inline Matrix self(const HyperParams& p, const PointSet& x, double diag_extra) {
    Matrix k = cross(p, x, x);
    k.diagonal().array() += diag_extra;
    return k;
}

inline double log_det_lu(const Matrix& m) {
    return std::log(Eigen::FullPivLU<Matrix>(m).determinant());
}

inline double entropy_lu(const Matrix& k) {
    return 0.5 * static_cast<double>(k.rows()) * std::log(2.0 * std::numbers::pi * std::numbers::e) +
           0.5 * log_det_lu(k);
}

inline Matrix gather(const Matrix& k, const IndexList& idx) {
    Matrix out(static_cast<Index>(idx.size()), static_cast<Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = 0; j < idx.size(); ++j) out(static_cast<Index>(i), static_cast<Index>(j)) = k(idx[i], idx[j]);
    }
    return out;
}

struct DensePosterior {
    Vector mean;
    Vector variance;
    Matrix covariance;
};

// Posterior with an explicit inverse of K_nn + (noise + jitter) I.
inline DensePosterior posterior_explicit(const HyperParams& p, const PointSet& train, const Vector& y,
                                         const PointSet& test, double jitter) {
    const Matrix k_inv = self(p, train, p.noise_variance + jitter).inverse();
    const Matrix k_sn = cross(p, test, train);
    DensePosterior out;
    out.mean = k_sn * k_inv * y;
    out.covariance = self(p, test, 0.0) - k_sn * k_inv * k_sn.transpose();
    out.variance = out.covariance.diagonal();
    return out;
}

inline double log_marginal_likelihood_explicit(const HyperParams& p, const PointSet& x, const Vector& y,
                                               double jitter) {
    const Matrix k = self(p, x, p.noise_variance + jitter);
    const double n = static_cast<double>(y.size());
    return -0.5 * y.dot(k.inverse() * y) - 0.5 * log_det_lu(k) - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

// Visits every size-k subset of {0..n-1} in lexicographic order.
inline void for_each_subset(Index n, Index k, const std::function<void(const IndexList&)>& visit) {
    IndexList pick(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
    for (;;) {
        visit(pick);
        Index i = k - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++pick[static_cast<std::size_t>(i)];
        for (Index j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// I(A; V) with A and V given as points and the union formed by stacking, all
// via LU determinants. A and V must be disjoint.
inline double mi_union_lu(const HyperParams& p, const PointSet& a, const PointSet& v, double diag_extra) {
    Matrix u(a.size() + v.size(), v.dim());
    u << a.coords(), v.coords();
    return 0.5 * (log_det_lu(self(p, a, diag_extra)) + log_det_lu(self(p, v, diag_extra)) -
                  log_det_lu(self(p, PointSet(u), diag_extra)));
}

}  // namespace oracle
