#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stablereg {

enum class ErrorKind {
  InvalidParameter,
  DegenerateECF,
  EmptyAfterTrim,
  ZeroSpread,
  SingularDesign,
  NonPositiveAlpha,
  SampleTooSmall,
  ZeroVariance,
  ConfigInvalid,
  ParseError,
  Internal,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library-wide exception. `kind()` identifies the failure class so callers
/// (benchmark harness, CLI) can count or report without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace stablereg
