#pragma once

#include <stdexcept>
#include <string>

namespace hdsign {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument or violated precondition (n too small, alpha outside (0,1), ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A weight function returned inf/nan at an observed radius.
class NonFiniteWeight : public Error {
 public:
  using Error::Error;
};

/// The variance estimate is zero, so z and the p-value are undefined.
class DegenerateVariance : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// No closed form is available for the requested distribution family.
class UnsupportedFamily : public Error {
 public:
  using Error::Error;
};

}  // namespace hdsign
