#pragma once

#include <stdexcept>
#include <string>

namespace vvckit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition (bad geometry, out-of-range index).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class AllocationError : public Error {
 public:
  using Error::Error;
};

#define VVCKIT_CHECK(cond, msg)                                  \
  do {                                                           \
    if (!(cond)) throw ::vvckit::ContractViolation(std::string(msg)); \
  } while (0)

}  // namespace vvckit
