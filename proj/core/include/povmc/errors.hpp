#pragma once

#include <stdexcept>
#include <string>

namespace povmc {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Matrix or vector has the wrong size for the requested operation.
struct DimensionError : Error {
    using Error::Error;
};

/// Structural expectation violated (non-Hermitian where Hermitian is required, etc.).
struct ShapeError : Error {
    using Error::Error;
};

/// Input is outside the mathematical domain of the operation.
struct DomainError : Error {
    using Error::Error;
};

/// Input is numerically degenerate (rank-deficient, dependent vectors).
struct DegeneracyError : Error {
    using Error::Error;
};

/// A composite object (circuit, factorization, table) is malformed.
struct StructureError : Error {
    using Error::Error;
};

/// Serialized input could not be parsed.
struct ParseError : Error {
    using Error::Error;
};

/// Filesystem read/write failure.
struct IoError : Error {
    using Error::Error;
};

} // namespace povmc
