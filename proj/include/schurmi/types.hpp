#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace schurmi {

using Index = Eigen::Index;
using IndexList = std::vector<Index>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// RBF kernel hyperparameters: k(x, x') = signal_variance * exp(-|x - x'|^2 / (2 length_scale^2)),
/// observations corrupted by i.i.d. Gaussian noise of variance noise_variance.
struct HyperParams {
    double signal_variance = 1.0;
    double length_scale = 1.0;
    double noise_variance = 0.0;

    /// Throws InvalidInput unless signal_variance > 0, length_scale > 0,
    /// noise_variance >= 0 and all three are finite.
    void validate() const;

    bool operator==(const HyperParams&) const = default;
};

/// Ordered set of d-dimensional locations, one per row.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(Matrix coords);
    PointSet(std::initializer_list<std::initializer_list<double>> rows);

    static PointSet empty(Index dim) { return PointSet(Matrix(0, dim)); }

    [[nodiscard]] Index size() const noexcept { return coords_.rows(); }
    [[nodiscard]] Index dim() const noexcept { return coords_.cols(); }
    [[nodiscard]] bool is_empty() const noexcept { return coords_.rows() == 0; }
    [[nodiscard]] const Matrix& coords() const noexcept { return coords_; }
    [[nodiscard]] auto row(Index i) const { return coords_.row(i); }

    [[nodiscard]] PointSet subset(std::span<const Index> indices) const;

private:
    Matrix coords_;
};

}  // namespace schurmi
