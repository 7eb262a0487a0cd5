#pragma once

#include <stdexcept>
#include <string>

namespace heights {

// Base class for failures raised by this library. Precondition violations
// (malformed input, bad field descriptions) throw std::invalid_argument
// instead, so callers can distinguish usage errors from runtime failures.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration or scan would exceed the configured candidate cap.
class resource_error : public error {
 public:
  explicit resource_error(const std::string& what) : error(what) {}
};

// A numeric routine failed to converge at maximum precision.
class numeric_error : public error {
 public:
  explicit numeric_error(const std::string& what) : error(what) {}
};

}  // namespace heights
