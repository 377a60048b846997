#pragma once

#include <stdexcept>
#include <string>

namespace hofib {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operator index, dimension or degree outside its valid range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Input violates a documented precondition of a construction.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Raised when a consistency check that must hold by construction fails.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hofib
