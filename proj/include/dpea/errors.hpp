#pragma once

#include <stdexcept>
#include <string>

namespace dpea {

/// Raised for malformed instances, out-of-range parameters and misuse of
/// adapter capabilities (e.g. requesting the phase-free mode on an adapter
/// whose transition families differ per phase).
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a file cannot be read or written.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dpea
