#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace schurmi {

enum class ErrorCode {
    kOk = 0,
    kInvalidInput = 1,
    kSingularMatrix = 2,
    kFittingFailed = 3,
    kParseError = 4,
    kInsufficientData = 5,
    kDegenerateData = 6,
    kIo = 7,
    kInternal = 99,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(ErrorCode::kInvalidInput, what) {}
};

/// Cholesky factorization broke down. `pivot()` is the zero-based index of the
/// first non-positive pivot, or -1 when the failing matrix was not a square
/// factorization (e.g. a nonpositive determinant ratio).
class SingularMatrix : public Error {
public:
    SingularMatrix(const std::string& what, std::ptrdiff_t pivot)
        : Error(ErrorCode::kSingularMatrix, what + " (pivot " + std::to_string(pivot) + ")"), pivot_(pivot) {}

    [[nodiscard]] std::ptrdiff_t pivot() const noexcept { return pivot_; }

private:
    std::ptrdiff_t pivot_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace schurmi
