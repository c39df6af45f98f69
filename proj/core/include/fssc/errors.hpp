#pragma once

#include <stdexcept>

namespace fssc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad inputs: malformed data, out-of-range options, broken contracts.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Filesystem and stream failures.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fssc
