#pragma once

#include <stdexcept>
#include <string>

namespace smkt {

/// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameter or out-of-domain evaluation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Root finder was handed an interval without a sign change.
class BracketError : public Error {
public:
    using Error::Error;
};

/// Iteration budget exhausted before reaching tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Scenario shape the closed-form machinery does not cover.
class UnsupportedConfiguration : public Error {
public:
    using Error::Error;
};

/// Numerical degeneracy that valid inputs cannot produce.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

} // namespace smkt
