#pragma once

#include <stdexcept>
#include <string>

namespace redlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter is outside the documented domain of an operation.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed its configured size cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// A sampling request would exceed the memory guard.
class GuardViolation : public Error {
public:
    using Error::Error;
};

/// The cycle-count formula was applied to a permutation that is not geodesic.
class NonGeodesicError : public Error {
public:
    using Error::Error;
};

/// No root of the Cauchy-transform cubic satisfies the branch conditions.
class BranchSelectionError : public Error {
public:
    using Error::Error;
};

/// Parameters sit on (or numerically next to) a region boundary curve.
class BoundaryProximityError : public Error {
public:
    using Error::Error;
};

/// A numerical self-check (residual, Hermiticity, convergence) failed.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace redlab
