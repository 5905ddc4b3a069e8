#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>

#include "schurmi/types.hpp"

namespace schurmi {

struct Dataset {
    std::string name;
    PointSet points;  // d = 2
    Vector values;
    /// Stats of the raw values; values = (raw - mean) / std when standardized.
    double mean = 0.0;
    double std = 1.0;
    bool standardized = false;

    [[nodiscard]] Index size() const noexcept { return points.size(); }
    [[nodiscard]] double destandardize(double v) const noexcept { return standardized ? v * std + mean : v; }
};

/// CSV with header `x,y,value`, one sample per row, LF or CRLF line endings.
/// Errors: ParseError (with 1-based line number), kInsufficientData for fewer
/// than 3 rows, kDegenerateData for a constant field, kIo if unreadable.
Dataset load_dataset(const std::filesystem::path& path, bool standardize);
Dataset parse_dataset(std::istream& in, std::string name, bool standardize);

/// m locations uniform in the unit square, values drawn from the GP prior
/// (Cholesky of K + noise I times a standard normal vector). Not standardized.
Dataset make_synthetic(std::uint64_t seed, Index m, const HyperParams& params);

}  // namespace schurmi
