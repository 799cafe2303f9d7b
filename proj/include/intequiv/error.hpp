#pragma once

#include <stdexcept>
#include <string>

namespace intequiv {

enum class ErrorCode {
  invalid_argument,
  parse,
  schema,
  precondition,
  cap_exceeded,
  not_found,
  budget_exhausted,
  local_obstruction,
  verification_failed,
  internal,
};

// Single exception type for the library; the code survives the C boundary.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace intequiv
