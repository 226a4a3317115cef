#pragma once

#include <stdexcept>
#include <string>

namespace kcf {

enum class ErrorKind {
  invalid_argument,
  dimension_mismatch,
  non_finite,
  singular,
  size_guard,
  parse,
  io,
};

/// Every error raised by the library. `kind()` lets callers and tests
/// distinguish failure classes without matching on message text.
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

// The literal overload avoids building a std::string on the success path.
inline void require(bool cond, ErrorKind kind, const char* what) {
  if (!cond) fail(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace kcf
