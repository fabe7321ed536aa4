#pragma once

#include <stdexcept>
#include <string>

namespace ringlab {

enum class ErrorKind {
  InvalidArgument,  // malformed input value
  Precondition,     // an operation's precondition does not hold
  Undecided,        // a finite budget ran out before a verdict was reached
  Schema,           // scenario or report does not match its schema
  Io,
  Internal,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library. The C API maps `kind()` onto
// ringlab_status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace ringlab
