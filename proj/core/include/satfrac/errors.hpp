#pragma once

#include <stdexcept>
#include <string>

namespace satfrac {

// Malformed or unreadable serialized data (matrices, fractions, bases).
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// A configurable resource guard (element count, candidate count, work
// budget) was exceeded before the computation finished.
struct LimitError : std::runtime_error {
  explicit LimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace satfrac
