#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hurstlab {

// Coarse failure category. The CLI maps these onto its exit codes.
enum class ErrorKind {
  Io,       // file missing, unreadable or unwritable
  Format,   // malformed or unsupported file contents
  Data,     // input violates an operation precondition (too short, too few values)
  Config,   // invalid parameters or inconsistent configuration
  Numeric,  // computation could not produce a finite, well-defined result
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hurstlab
