#pragma once

#include <stdexcept>
#include <string>

namespace qmod {

// Base for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its domain: unknown ids, mismatched
// quivers or groups, a loop handed to collapse, and so on.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Numerical failure: singular or non-positive input, non-finite values.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmod
