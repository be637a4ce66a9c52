#pragma once

#include <stdexcept>
#include <string>

namespace stcga {

// Bad input: wrong dimensions, mismatched algebras, malformed files.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numerically degenerate configuration: non-invertible pseudoscalar,
// linearly dependent intersection operands, point at infinity, ...
class DegeneracyError : public std::runtime_error {
public:
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stcga
