#pragma once

#include <stdexcept>
#include <string>

namespace conflab {

// Every error raised by the library derives from Error so callers (the CLI in
// particular) can map categories onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A point, radius or parameter outside the domain an operation accepts.
class DomainError : public Error {
public:
    using Error::Error;
};

// Malformed input objects: bad curves, mismatched dimensions, unknown ids.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A documented precondition of a checking routine does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Non-finite samples, unstable truncation sequences, grids that are too coarse.
class NumericalError : public Error {
public:
    using Error::Error;
};

// Sequences handed to the limit classifier that violate its contract.
class DataError : public Error {
public:
    using Error::Error;
};

// A discretization would exceed the configured node budget.
class CapacityError : public Error {
public:
    using Error::Error;
};

}  // namespace conflab
