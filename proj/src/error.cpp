#include "stablereg/error.hpp"

namespace stablereg {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::DegenerateECF: return "DegenerateECF";
    case ErrorKind::EmptyAfterTrim: return "EmptyAfterTrim";
    case ErrorKind::ZeroSpread: return "ZeroSpread";
    case ErrorKind::SingularDesign: return "SingularDesign";
    case ErrorKind::NonPositiveAlpha: return "NonPositiveAlpha";
    case ErrorKind::SampleTooSmall: return "SampleTooSmall";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace stablereg
