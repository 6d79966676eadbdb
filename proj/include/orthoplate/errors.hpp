#pragma once

#include <stdexcept>
#include <string>

namespace orthoplate {

/// Invalid or inconsistent input: bad constants, malformed files, violated preconditions.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation could not be completed to the requested accuracy or count.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace orthoplate
