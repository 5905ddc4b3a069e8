#pragma once

#include <string_view>

#include "schurmi/types.hpp"

namespace schurmi {

/// Lower-triangular Cholesky factor L with L * L^T = source and diag(L) > 0.
class CholeskyFactor {
public:
    CholeskyFactor() = default;

    [[nodiscard]] const Matrix& lower() const noexcept { return lower_; }
    [[nodiscard]] Index size() const noexcept { return lower_.rows(); }

    /// 2 * sum(log(diag(L))).
    [[nodiscard]] double log_det() const;

    /// Solves L X = B in place of a copy.
    [[nodiscard]] Matrix solve_lower(const Eigen::Ref<const Matrix>& rhs) const;
    /// Solves (L L^T) x = b.
    [[nodiscard]] Vector solve(const Eigen::Ref<const Vector>& rhs) const;

private:
    friend CholeskyFactor cholesky(const Eigen::Ref<const Matrix>&, double, std::string_view);
    Matrix lower_;
};

/// Factorizes `matrix + jitter * I`. Only the lower triangle is read.
/// Throws SingularMatrix carrying the first failing pivot, InvalidInput on
/// non-square or non-finite input.
CholeskyFactor cholesky(const Eigen::Ref<const Matrix>& matrix, double jitter = 0.0,
                        std::string_view what = "matrix");

struct LogDet {
    double value = 0.0;
    CholeskyFactor factor;
};

/// ln det(matrix + jitter * I) via Cholesky. Rejects matrices that are not
/// symmetric to 1e-12 relative.
LogDet logdet(const Eigen::Ref<const Matrix>& matrix, double jitter = 0.0);

/// Same value as logdet(matrix).value without keeping the factor and without
/// the symmetry scan; for hot loops over matrices symmetric by construction.
double logdet_spd(const Eigen::Ref<const Matrix>& matrix, std::string_view what = "matrix");

/// Max |M - M^T| / max(1, max|M|).
double asymmetry(const Eigen::Ref<const Matrix>& matrix);

}  // namespace schurmi
