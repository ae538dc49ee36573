#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace salpeter {

enum class ErrorCode {
  InvalidArgument,
  PoleAtX,
  PoleOnGrid,
  DegenerateShift,
  DegenerateRadicand,
  NotPerfectSquare,
  AdmissibilityFailure,
  AmbiguousBranch,
  UnsupportedSigmaShape,
  NoBoundState,
  ComplexSpectrum,
  ParameterPole,
  NonConvergent,
  RegimeMismatch,
  ConvergenceViolation,
  NormSquaredNegative,
  NotConverged,
  Overflow,
  StepTooCoarse,
};

constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PoleAtX: return "PoleAtX";
    case ErrorCode::PoleOnGrid: return "PoleOnGrid";
    case ErrorCode::DegenerateShift: return "DegenerateShift";
    case ErrorCode::DegenerateRadicand: return "DegenerateRadicand";
    case ErrorCode::NotPerfectSquare: return "NotPerfectSquare";
    case ErrorCode::AdmissibilityFailure: return "AdmissibilityFailure";
    case ErrorCode::AmbiguousBranch: return "AmbiguousBranch";
    case ErrorCode::UnsupportedSigmaShape: return "UnsupportedSigmaShape";
    case ErrorCode::NoBoundState: return "NoBoundState";
    case ErrorCode::ComplexSpectrum: return "ComplexSpectrum";
    case ErrorCode::ParameterPole: return "ParameterPole";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::RegimeMismatch: return "RegimeMismatch";
    case ErrorCode::ConvergenceViolation: return "ConvergenceViolation";
    case ErrorCode::NormSquaredNegative: return "NormSquaredNegative";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::StepTooCoarse: return "StepTooCoarse";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace salpeter
