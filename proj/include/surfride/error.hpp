/**
 * @file error.hpp
 * @brief Exception hierarchy shared by all surfride modules.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace surfride {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input: violated type invariants, malformed config, bad arguments.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Least-squares fit could not be formed or is numerically unusable.
class FitError : public Error {
public:
    using Error::Error;
};

/// Model queried outside the range where it is defined (e.g. n = 0 with K_T terms of degree > 2).
class OutOfModelRange : public Error {
public:
    using Error::Error;
};

/// Threshold solver failure (no sign change, non-monotonic residual, ...).
class SolverError : public Error {
public:
    using Error::Error;
};

/// Thrust never overcomes resistance within the search cap.
class NoThresholdError : public SolverError {
public:
    using SolverError::SolverError;
};

/// Residual is not increasing on the physical branch.
class NonMonotonicResidual : public SolverError {
public:
    using SolverError::SolverError;
};

/// ODE oracle could not produce a clean bracket.
class OracleError : public Error {
public:
    using Error::Error;
};

}  // namespace surfride
