#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace condensate {

enum class ErrorKind {
  kInvalidArgument,
  kBlowUpReached,
  kZeroDatum,
  kNotSmoothRegime,
  kNoBracket,
  kSupportOverflow,
  kCflViolation,
  kTimeMismatch,
  kConfig,
  kIo,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// command-line front end can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace condensate
