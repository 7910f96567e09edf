#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ruledkit {

enum class ErrorCode {
  NonPositiveReal,
  NotUnit,
  ZeroDirection,
  CylindricalPoint,
  OrderUnavailable,
  OutOfDomain,
  NotArclength,
  NotSingular,
  NotDevelopable,
  DegenerateDirector,
  InsufficientJetOrder,
  OrderUndetectable,
  DegenerateSingularity,
  NoVerdict,
  InvalidInitialFrame,
  NonPositiveKappa0,
  NotOnStratum,
  UnsupportedLabel,
  InvalidArgument,
  ParseError,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveReal: return "NonPositiveReal";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::CylindricalPoint: return "CylindricalPoint";
    case ErrorCode::OrderUnavailable: return "OrderUnavailable";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotArclength: return "NotArclength";
    case ErrorCode::NotSingular: return "NotSingular";
    case ErrorCode::NotDevelopable: return "NotDevelopable";
    case ErrorCode::DegenerateDirector: return "DegenerateDirector";
    case ErrorCode::InsufficientJetOrder: return "InsufficientJetOrder";
    case ErrorCode::OrderUndetectable: return "OrderUndetectable";
    case ErrorCode::DegenerateSingularity: return "DegenerateSingularity";
    case ErrorCode::NoVerdict: return "NoVerdict";
    case ErrorCode::InvalidInitialFrame: return "InvalidInitialFrame";
    case ErrorCode::NonPositiveKappa0: return "NonPositiveKappa0";
    case ErrorCode::NotOnStratum: return "NotOnStratum";
    case ErrorCode::UnsupportedLabel: return "UnsupportedLabel";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace ruledkit
