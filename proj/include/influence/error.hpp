#pragma once

#include <stdexcept>
#include <string>

namespace influence {

enum class ErrorKind {
  invalid_dimension,
  invalid_parameter,
  unsupported_topology,
  configuration,
  io,
};

// Single exception type for the library; callers switch on kind() when the
// category matters (the CLI maps it to an exit code).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace influence
