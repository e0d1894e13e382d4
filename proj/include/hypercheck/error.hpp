#pragma once

#include <stdexcept>
#include <string>

namespace hypercheck {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (bad tables, empty sets, unknown symbols).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A size cap was hit; the caller should switch to a bounded method.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// An operation's documented precondition does not hold for its arguments.
class PreconditionViolation : public Error {
public:
    using Error::Error;
};

} // namespace hypercheck
