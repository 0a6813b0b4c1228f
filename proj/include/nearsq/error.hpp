#pragma once

#include <stdexcept>
#include <string>

namespace nearsq {

// Failure categories surfaced by every module. The CLI maps each one to a
// distinct exit code.
enum class ErrorKind {
  InvalidArgument,
  Range,     // argument outside a closed-form branch
  Regime,    // hypothesis of a theorem violated
  Budget,    // enumeration would exceed its budget
  Accuracy,  // quadrature or marching could not meet tolerance
  Coverage,  // prime table too small
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace nearsq
