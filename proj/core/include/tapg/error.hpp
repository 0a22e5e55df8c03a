#pragma once

#include <stdexcept>
#include <string>

namespace tapg {

enum class ErrorCode {
  kBadMagic,
  kVersionMismatch,
  kTruncated,
  kNonFinite,
  kShapeMismatch,
  kConfig,
  kData,
  kIo,
};

/// All library errors carry a code so callers (and the CLI exit-code
/// mapping) can distinguish config mistakes from bad data.
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

}  // namespace tapg
