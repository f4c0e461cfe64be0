#pragma once

#include <stdexcept>
#include <string>

namespace pocre {

// Unreadable or malformed input (files, flags). CLI exit code 2.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Dimension mismatch between matrices/files. CLI exit code 3.
struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric contract violation (non-finite data, bad parameter). CLI exit code 4.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pocre
