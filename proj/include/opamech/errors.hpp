#pragma once

#include <stdexcept>

namespace opamech {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid physical parameters, grids, or configuration input.
class ValidationError : public Error {
public:
    using Error::Error;
};

// The parametric pump sits at (or beyond) the gain threshold where the
// steady-state amplitude is undefined.
class ThresholdError : public Error {
public:
    using Error::Error;
};

// An iterative scheme (fixed point, eigenvalue iteration) failed to converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// The drift matrix is not strictly stable, so no stationary state exists.
class UnstableError : public Error {
public:
    using Error::Error;
};

// A linear solve produced an unusable result (singular system, large
// residual, badly asymmetric solution).
class SingularError : public Error {
public:
    using Error::Error;
};

// A covariance matrix violates the quantum uncertainty bound or another
// physicality requirement.
class UnphysicalError : public Error {
public:
    using Error::Error;
};

// A gain optimization found no stable operating point inside its bounds.
class NoStablePointError : public Error {
public:
    using Error::Error;
};

} // namespace opamech
