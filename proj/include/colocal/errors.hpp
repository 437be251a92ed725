#pragma once

#include <stdexcept>
#include <string>

namespace colocal {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input does not satisfy a documented precondition (bad job file, bad polynomial, ...).
struct ValidationError : Error {
    using Error::Error;
};

/// Consecutive differentials do not compose to zero.
struct NotAComplex : Error {
    using Error::Error;
};

struct InhomogeneousElement : ValidationError {
    using ValidationError::ValidationError;
};

/// A Koszul colimit did not settle before the maximal power was reached.
struct StabilizationNotReached : Error {
    using Error::Error;
};

/// Certification was requested but no vanishing bound was visible in the window.
struct WindowTooSmall : Error {
    using Error::Error;
};

/// Abutment requested for a page that is not collapsed by position.
struct NotCollapsed : Error {
    using Error::Error;
};

struct CornerNotResolvable : Error {
    using Error::Error;
};

struct InvalidAction : ValidationError {
    using ValidationError::ValidationError;
};

}  // namespace colocal
