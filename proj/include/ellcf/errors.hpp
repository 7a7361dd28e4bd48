#pragma once

#include <stdexcept>
#include <string>

namespace ellcf {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid argument, parameter outside a family's admissible range, or a
// malformed distribution specification.
class DomainError : public Error {
public:
    using Error::Error;
};

// A series, iteration or quadrature failed to reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// A radial moment E[R^{2k}] (or the moment integral itself) diverges.
class MomentDoesNotExist : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace ellcf
