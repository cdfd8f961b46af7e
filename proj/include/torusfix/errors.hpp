#pragma once

#include <stdexcept>
#include <string>

namespace torusfix {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    using Error::Error;
};

/// Out-of-domain argument such as a non-positive iterate count.
struct InvalidArgument : Error {
    using Error::Error;
};

/// |det A| != 1 where a unimodular matrix is required.
struct NonUnimodular : Error {
    using Error::Error;
};

struct WordTooLong : Error {
    using Error::Error;
};

/// Fiber matrix is not of the form [[1, b3], [0, b4]].
struct NotNormalized : Error {
    using Error::Error;
};

struct NoEigenvector : Error {
    using Error::Error;
};

struct IdentityMatrix : Error {
    using Error::Error;
};

/// Two independent computations of the same quantity disagreed.
struct InternalMismatch : Error {
    using Error::Error;
};

struct ConditionsNotMet : Error {
    using Error::Error;
};

/// The explicit construction has no admissible translation parameters.
struct ConstructionUnavailable : Error {
    using Error::Error;
};

struct GluingViolation : Error {
    using Error::Error;
};

}  // namespace torusfix
