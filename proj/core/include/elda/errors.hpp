#pragma once

#include <stdexcept>

namespace elda {

/// Caller violated an input contract (bad dimensions, degenerate box, ...).
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Filesystem-level failure (unreadable path, write failure).
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A file exists but does not match its declared format.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure (factorization breakdown, residual out of bounds).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The frame-1 exemplar is indistinguishable from the background mean,
/// so semi-supervised weights are undefined.
class DegenerateExemplarError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

} // namespace elda
