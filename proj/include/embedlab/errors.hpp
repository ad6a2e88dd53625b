#pragma once

#include <stdexcept>
#include <string>

namespace embedlab {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: unreadable files, bad JSON, unknown primitive ids.
struct ParseError : Error {
    using Error::Error;
};

// Structurally valid input that violates a documented precondition.
struct ValidationError : Error {
    using Error::Error;
};

// A guard against requests that would exceed the supported problem size.
struct ResourceGuardError : Error {
    using Error::Error;
};

struct NegativeProbability : ValidationError {
    using ValidationError::ValidationError;
};

struct NotNormalized : ValidationError {
    using ValidationError::ValidationError;
};

struct NotHermitian : ValidationError {
    using ValidationError::ValidationError;
};

struct NegativeEigenvalue : ValidationError {
    using ValidationError::ValidationError;
};

struct PhaseKeyMismatch : ValidationError {
    using ValidationError::ValidationError;
};

struct LayoutMismatch : ValidationError {
    using ValidationError::ValidationError;
};

struct DimensionTooLarge : ResourceGuardError {
    using ResourceGuardError::ResourceGuardError;
};

}  // namespace embedlab
