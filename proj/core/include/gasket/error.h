#pragma once

#include <stdexcept>
#include <string>

namespace gasket {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NoRoot : public Error {
 public:
  using Error::Error;
};

class MultipleRoots : public Error {
 public:
  using Error::Error;
};

/// Raised when interval refinement hits its cap while the quantity has not
/// reduced to an exact zero. Never expected in correct operation.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// Enumeration or search exceeded a configured cap.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gasket
