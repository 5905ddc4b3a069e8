#include "schurmi/linalg.hpp"

#include <cmath>
#include <string>

#include "schurmi/error.hpp"

namespace schurmi {
namespace {

// Unblocked column Cholesky used only to locate the failing pivot after the
// blocked factorization has already reported a breakdown.
Index find_failing_pivot(const Eigen::Ref<const Matrix>& a, double jitter) {
    const Index n = a.rows();
    Matrix l = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
        double d = a(j, j) + jitter;
        for (Index k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0)) return j;
        l(j, j) = std::sqrt(d);
        for (Index i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return n - 1;
}

void require_square(const Eigen::Ref<const Matrix>& m, std::string_view what) {
    if (m.rows() != m.cols()) {
        throw InvalidInput(std::string(what) + " must be square, got " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()));
    }
}

}  // namespace

double CholeskyFactor::log_det() const {
    return 2.0 * lower_.diagonal().array().log().sum();
}

Matrix CholeskyFactor::solve_lower(const Eigen::Ref<const Matrix>& rhs) const {
    if (rhs.rows() != size()) throw InvalidInput("triangular solve: row mismatch");
    return lower_.triangularView<Eigen::Lower>().solve(rhs);
}

Vector CholeskyFactor::solve(const Eigen::Ref<const Vector>& rhs) const {
    if (rhs.size() != size()) throw InvalidInput("cholesky solve: size mismatch");
    Vector x = lower_.triangularView<Eigen::Lower>().solve(rhs);
    lower_.triangularView<Eigen::Lower>().transpose().solveInPlace(x);
    return x;
}

CholeskyFactor cholesky(const Eigen::Ref<const Matrix>& matrix, double jitter, std::string_view what) {
    require_square(matrix, what);
    if (!(jitter >= 0.0) || !std::isfinite(jitter)) throw InvalidInput("jitter must be finite and >= 0");
    if (!matrix.allFinite()) throw InvalidInput(std::string(what) + " has non-finite entries");

    Matrix work = matrix;
    if (jitter > 0.0) work.diagonal().array() += jitter;
    Eigen::LLT<Matrix, Eigen::Lower> llt(work);
    if (llt.info() != Eigen::Success || !(llt.matrixLLT().diagonal().array() > 0.0).all()) {
        throw SingularMatrix(std::string("cholesky of ") + std::string(what) + " failed",
                             find_failing_pivot(matrix, jitter));
    }
    CholeskyFactor out;
    out.lower_ = llt.matrixL();
    return out;
}

double asymmetry(const Eigen::Ref<const Matrix>& matrix) {
    if (matrix.size() == 0) return 0.0;
    const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
    return (matrix - matrix.transpose()).cwiseAbs().maxCoeff() / scale;
}

LogDet logdet(const Eigen::Ref<const Matrix>& matrix, double jitter) {
    require_square(matrix, "logdet input");
    if (asymmetry(matrix) > 1e-12) throw InvalidInput("logdet input is not symmetric");
    LogDet out;
    out.factor = cholesky(matrix, jitter, "logdet input");
    out.value = out.factor.log_det();
    return out;
}

double logdet_spd(const Eigen::Ref<const Matrix>& matrix, std::string_view what) {
    if (matrix.rows() == 0) return 0.0;
    Eigen::LLT<Matrix, Eigen::Lower> llt(matrix);
    if (llt.info() != Eigen::Success) {
        if (!matrix.allFinite()) throw InvalidInput(std::string(what) + " has non-finite entries");
        throw SingularMatrix(std::string("cholesky of ") + std::string(what) + " failed",
                             find_failing_pivot(matrix, 0.0));
    }
    const auto diag = llt.matrixLLT().diagonal().array();
    if (!(diag > 0.0).all()) {
        throw SingularMatrix(std::string("cholesky of ") + std::string(what) + " failed",
                             find_failing_pivot(matrix, 0.0));
    }
    return 2.0 * diag.log().sum();
}

}  // namespace schurmi
