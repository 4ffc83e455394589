#pragma once

#include <stdexcept>
#include <string>

namespace fhv {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  Io,
  Internal,
};

// Single exception type thrown by the core; the C API maps `code()` onto
// status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void invalid_argument(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace fhv
