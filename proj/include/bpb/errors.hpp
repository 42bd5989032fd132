#pragma once

#include <stdexcept>
#include <string>

namespace bpb {

// Machine-readable failure reasons. The experiment harness aggregates these
// per trial, so every throw site must pick the code that names the cause.
enum class ErrorCode {
  NotHermitian,
  NoConvergence,
  InvalidP,
  DimensionMismatch,
  NotNormal,
  NotPositive,
  ClassMismatch,
  AlmostAttainmentViolated,
  EmptyProjection,
  InvalidEpsilon,
  PreconditionViolated,
  IterationStalled,
  DimTooLarge,
  IOFailure,
  InvalidArgument,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::ClassMismatch: return "ClassMismatch";
    case ErrorCode::AlmostAttainmentViolated: return "AlmostAttainmentViolated";
    case ErrorCode::EmptyProjection: return "EmptyProjection";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::IterationStalled: return "IterationStalled";
    case ErrorCode::DimTooLarge: return "DimTooLarge";
    case ErrorCode::IOFailure: return "IOFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace bpb
