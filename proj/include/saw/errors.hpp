#ifndef SAW_ERRORS_HPP
#define SAW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace saw {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Points, steps or symmetries of different dimension were combined.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// An argument is outside the domain of the operation (bad length, pivot
// out of range, malformed text, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A configured resource cap (walk count, group size, rational-mode size)
// would be exceeded.
class CapacityError : public Error {
public:
    using Error::Error;
};

// A structural precondition of a G-method operation does not hold, e.g.
// reduce() on a matrix that is not [Delta]-stable on Sigma.
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace saw

#endif  // SAW_ERRORS_HPP
