#pragma once

#include <stdexcept>
#include <string>

namespace qcalab {

// Validation errors signal a violated precondition on caller-supplied data
// (CLI maps them to exit code 2). Everything else derived from Error is an
// internal failure (exit code 1).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct NotHermitianError final : ValidationError {
    explicit NotHermitianError(const std::string& what) : ValidationError(what) {}
};

struct NotUnitaryError final : ValidationError {
    explicit NotUnitaryError(const std::string& what) : ValidationError(what) {}
};

struct ThetaNonzeroForBosonError final : ValidationError {
    explicit ThetaNonzeroForBosonError(const std::string& what) : ValidationError(what) {}
};

struct ZeroMomentumError final : ValidationError {
    explicit ZeroMomentumError(const std::string& what) : ValidationError(what) {}
};

struct GOutOfRangeError final : Error {
    explicit GOutOfRangeError(const std::string& what) : Error(what) {}
};

struct DimensionTooLargeError final : ValidationError {
    explicit DimensionTooLargeError(const std::string& what) : ValidationError(what) {}
};

struct ViolationAboveToleranceError final : Error {
    explicit ViolationAboveToleranceError(const std::string& what) : Error(what) {}
};

struct DivisionByZeroError final : ValidationError {
    explicit DivisionByZeroError(const std::string& what) : ValidationError(what) {}
};

struct NegativeSqrtError final : ValidationError {
    explicit NegativeSqrtError(const std::string& what) : ValidationError(what) {}
};

struct PrecisionTooLowError final : ValidationError {
    explicit PrecisionTooLowError(const std::string& what) : ValidationError(what) {}
};

struct NoConvergenceError final : Error {
    explicit NoConvergenceError(const std::string& what) : Error(what) {}
};

struct NonPositiveValueError final : ValidationError {
    explicit NonPositiveValueError(const std::string& what) : ValidationError(what) {}
};

struct DegenerateDataError final : ValidationError {
    explicit DegenerateDataError(const std::string& what) : ValidationError(what) {}
};

}  // namespace qcalab
