#include "schurmi/types.hpp"

#include <cmath>
#include <string>

#include "schurmi/error.hpp"

namespace schurmi {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::kOk: return "ok";
        case ErrorCode::kInvalidInput: return "invalid input";
        case ErrorCode::kSingularMatrix: return "singular matrix";
        case ErrorCode::kFittingFailed: return "fitting failed";
        case ErrorCode::kParseError: return "parse error";
        case ErrorCode::kInsufficientData: return "insufficient data";
        case ErrorCode::kDegenerateData: return "degenerate data";
        case ErrorCode::kIo: return "i/o error";
        case ErrorCode::kInternal: return "internal error";
    }
    return "unknown error";
}

void HyperParams::validate() const {
    if (!std::isfinite(signal_variance) || !std::isfinite(length_scale) || !std::isfinite(noise_variance)) {
        throw InvalidInput("hyperparameters must be finite");
    }
    if (signal_variance <= 0.0) throw InvalidInput("signal_variance must be > 0");
    if (length_scale <= 0.0) throw InvalidInput("length_scale must be > 0");
    if (noise_variance < 0.0) throw InvalidInput("noise_variance must be >= 0");
}

PointSet::PointSet(Matrix coords) : coords_(std::move(coords)) {
    if (coords_.rows() > 0 && coords_.cols() < 1) throw InvalidInput("point dimension must be >= 1");
    if (!coords_.allFinite()) throw InvalidInput("point coordinates must be finite");
}

PointSet::PointSet(std::initializer_list<std::initializer_list<double>> rows) {
    const auto m = static_cast<Index>(rows.size());
    const auto d = m > 0 ? static_cast<Index>(rows.begin()->size()) : Index{0};
    Matrix coords(m, d);
    Index i = 0;
    for (const auto& r : rows) {
        if (static_cast<Index>(r.size()) != d) throw InvalidInput("ragged point rows");
        Index j = 0;
        for (double v : r) coords(i, j++) = v;
        ++i;
    }
    *this = PointSet(std::move(coords));
}

PointSet PointSet::subset(std::span<const Index> indices) const {
    Matrix out(static_cast<Index>(indices.size()), dim());
    for (std::size_t k = 0; k < indices.size(); ++k) {
        const Index i = indices[k];
        if (i < 0 || i >= size()) throw InvalidInput("point index " + std::to_string(i) + " out of range");
        out.row(static_cast<Index>(k)) = coords_.row(i);
    }
    return PointSet(std::move(out));
}

}  // namespace schurmi
