#pragma once

#include <stdexcept>
#include <string>

namespace ntic {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A symbol index or vector dimension does not fit the alphabet in use.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An exact enumeration would exceed its configured size cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Two routes that must agree did not, or a KL value came out clearly negative.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Quadrature failed to reach its error target.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// The IG / one-step NTIC witness could not separate the two priors.
class WitnessFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace ntic
