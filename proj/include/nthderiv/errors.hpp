#pragma once

#include <stdexcept>
#include <string>

namespace nthderiv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument or malformed input (orders out of range, broken JSON, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A partition or monomial that does not belong to the class it was offered to.
class ClassViolation : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// A derivative table does not carry a derivative order the formula needs.
class MissingOrder : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Evaluation would divide by f'(t0) = 0 or F_y(x0, y0) = 0, or a series has no
/// linear term to invert.
class DivisionByZero : public Error {
public:
    using Error::Error;
};

/// The evaluation point does not satisfy F(x0, y0) = 0.
class NotOnCurve : public Error {
public:
    using Error::Error;
};

} // namespace nthderiv
