#include "schurmi/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <string_view>
#include <vector>

#include "schurmi/error.hpp"
#include "schurmi/kernel.hpp"
#include "schurmi/linalg.hpp"

namespace schurmi {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view field, std::size_t line, const char* column) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty() || !std::isfinite(v)) {
        throw ParseError("column '" + std::string(column) + "' is not a finite number: '" + std::string(field) + "'",
                         line);
    }
    return v;
}

}  // namespace

Dataset parse_dataset(std::istream& in, std::string name, bool standardize) {
    std::string raw;
    std::size_t line = 0;
    bool header_seen = false;
    std::vector<double> xs, ys, vs;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view row = raw;
        if (line == 1 && row.starts_with("\xEF\xBB\xBF")) row.remove_prefix(3);
        row = trim(row);
        if (row.empty()) continue;
        if (!header_seen) {
            if (row != "x,y,value") throw ParseError("expected header 'x,y,value'", line);
            header_seen = true;
            continue;
        }
        const auto c1 = row.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
        if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos) {
            throw ParseError("expected 3 comma-separated fields", line);
        }
        xs.push_back(parse_number(row.substr(0, c1), line, "x"));
        ys.push_back(parse_number(row.substr(c1 + 1, c2 - c1 - 1), line, "y"));
        vs.push_back(parse_number(row.substr(c2 + 1), line, "value"));
    }
    if (!header_seen) throw ParseError("missing header 'x,y,value'", line == 0 ? 1 : line);
    if (vs.size() < 3) {
        throw Error(ErrorCode::kInsufficientData, "dataset has " + std::to_string(vs.size()) + " rows, need >= 3");
    }

    const auto m = static_cast<Index>(vs.size());
    Matrix coords(m, 2);
    Dataset ds;
    ds.name = std::move(name);
    ds.values.resize(m);
    for (Index i = 0; i < m; ++i) {
        coords(i, 0) = xs[static_cast<std::size_t>(i)];
        coords(i, 1) = ys[static_cast<std::size_t>(i)];
        ds.values[i] = vs[static_cast<std::size_t>(i)];
    }
    ds.points = PointSet(std::move(coords));

    const double mean = ds.values.mean();
    const double sd = std::sqrt((ds.values.array() - mean).square().mean());
    if (!(sd > 0.0)) throw Error(ErrorCode::kDegenerateData, "dataset values are constant");
    ds.mean = mean;
    ds.std = sd;
    if (standardize) {
        ds.values = (ds.values.array() - mean) / sd;
        ds.standardized = true;
    }
    return ds;
}

Dataset load_dataset(const std::filesystem::path& path, bool standardize) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot open dataset '" + path.string() + "'");
    return parse_dataset(in, path.stem().string(), standardize);
}

Dataset make_synthetic(std::uint64_t seed, Index m, const HyperParams& params) {
    params.validate();
    if (m < 3) throw InvalidInput("synthetic dataset needs m >= 3");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    Matrix coords(m, 2);
    for (Index i = 0; i < m; ++i) {
        coords(i, 0) = unit(rng);
        coords(i, 1) = unit(rng);
    }
    Vector z(m);
    for (Index i = 0; i < m; ++i) z[i] = normal(rng);

    Dataset ds;
    ds.name = "synthetic";
    ds.points = PointSet(std::move(coords));
    const CholeskyFactor chol = cholesky(cov_matrix(params, ds.points, true, default_jitter(params)), 0.0, "K + noise");
    ds.values = chol.lower() * z;
    return ds;
}

}  // namespace schurmi
