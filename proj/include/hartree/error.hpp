#pragma once

#include <stdexcept>
#include <string>

namespace hartree {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user-supplied configuration (grid sizes, step sizes, flags).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Parameter outside the mathematical domain of a formula (e.g. alpha not in (0, N)).
class DomainError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Two fields or operators built on different grids were combined.
class GridMismatch : public Error {
public:
    using Error::Error;
};

/// Problem too large for a brute-force routine.
class SizeError : public Error {
public:
    using Error::Error;
};

class ZeroField : public Error {
public:
    using Error::Error;
};

class MassMismatch : public Error {
public:
    using Error::Error;
};

class NegativeDensity : public Error {
public:
    using Error::Error;
};

/// Iterative solver failures.
class SolverError : public Error {
public:
    using Error::Error;
};

class Divergence : public SolverError {
public:
    using SolverError::SolverError;
};

class MaxIterExceeded : public SolverError {
public:
    using SolverError::SolverError;
};

/// The field is not small on the outer shell of the box: the truncated
/// periodic domain no longer represents free space.
class BoundaryContamination : public SolverError {
public:
    using SolverError::SolverError;
};

/// Recorded phase jumped by more than the unwrapping window between rows.
class PhaseAliasing : public Error {
public:
    using Error::Error;
};

/// A numerical identity that must hold by construction was violated.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// Malformed or corrupted file on disk.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace hartree
