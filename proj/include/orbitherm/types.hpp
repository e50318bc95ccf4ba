#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace orbitherm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file could not be read or did not match the expected format.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Input data violates a documented invariant; the message names the
/// violated condition and the offending indices.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An iterative solver did not reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// A numerical assumption failed (complex spectrum, singular system, ...).
class NumericsError : public Error {
public:
    using Error::Error;
};

}  // namespace orbitherm
