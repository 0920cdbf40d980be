#pragma once

#include <stdexcept>
#include <string>

namespace curvematch {

enum class ErrorCode {
  ParseError,
  IoError,
  DegenerateCurve,
  SelfIntersecting,
  NonManifold,
  Disconnected,
  NumericalDegeneracy,
  ConvergenceFailure,
  DegenerateSegmentation,
  DimensionMismatch,
  NotAnEdge,
  MissingGroundTruth,
  NoPositives,
  InvalidArgument,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::DegenerateCurve: return "DegenerateCurve";
    case ErrorCode::SelfIntersecting: return "SelfIntersecting";
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DegenerateSegmentation: return "DegenerateSegmentation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotAnEdge: return "NotAnEdge";
    case ErrorCode::MissingGroundTruth: return "MissingGroundTruth";
    case ErrorCode::NoPositives: return "NoPositives";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace curvematch
