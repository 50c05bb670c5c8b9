#pragma once

#include <stdexcept>
#include <string>

namespace qrs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad system spec, index out of range, wrong system for a set.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// An enumeration would exceed its configured size limit.
class GuardExceeded : public Error {
public:
  using Error::Error;
};

/// A structural statement that must always hold was observed to fail.
/// Raising this means a bug in the library (or a counterexample worth reporting).
class InvariantViolation : public Error {
public:
  using Error::Error;
};

} // namespace qrs
