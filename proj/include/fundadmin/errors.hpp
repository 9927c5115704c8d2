#pragma once

#include <stdexcept>
#include <string>

namespace fundadmin {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An input violates a documented precondition or type invariant.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// The requested operating point cannot exist (e.g. AR below the base fraction).
class InfeasibleError : public Error {
public:
  using Error::Error;
};

/// A target uplift or success rate lies beyond what the response can deliver.
class UnreachableTargetError : public Error {
public:
  using Error::Error;
};

class InsufficientDataError : public Error {
public:
  using Error::Error;
};

class DegenerateDataError : public Error {
public:
  using Error::Error;
};

class LookupError : public Error {
public:
  using Error::Error;
};

// I/O family. The CLI maps these to exit code 2.

class IoError : public Error {
public:
  using Error::Error;
};

class FormatError : public IoError {
public:
  using IoError::IoError;
};

class ParseError : public IoError {
public:
  using IoError::IoError;
};

}  // namespace fundadmin
