#pragma once

#include <stdexcept>
#include <string>

namespace choreo {

/// Failure categories surfaced by the library. Each maps to a distinct
/// process exit code in the CLI (see tools/ and README).
enum class ErrorCode {
  ParallelLines,
  EvaluationOutsideDomain,
  NonDifferentiable,
  QuadratureFailure,
  ConditionViolated,
  DomainViolation,
  RootNotBracketed,
  CrossingCountUnexpected,
  NoIntersection,
  BranchJump,
  UniquenessViolated,
  VanishingJ,
  TurningPoint,
  ModulusOutOfRange,
  SingularSeparation,
  RankDeficient,
  ConfigError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParallelLines: return "ParallelLines";
    case ErrorCode::EvaluationOutsideDomain: return "EvaluationOutsideDomain";
    case ErrorCode::NonDifferentiable: return "NonDifferentiable";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::ConditionViolated: return "ConditionViolated";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::RootNotBracketed: return "RootNotBracketed";
    case ErrorCode::CrossingCountUnexpected: return "CrossingCountUnexpected";
    case ErrorCode::NoIntersection: return "NoIntersection";
    case ErrorCode::BranchJump: return "BranchJump";
    case ErrorCode::UniquenessViolated: return "UniquenessViolated";
    case ErrorCode::VanishingJ: return "VanishingJ";
    case ErrorCode::TurningPoint: return "TurningPoint";
    case ErrorCode::ModulusOutOfRange: return "ModulusOutOfRange";
    case ErrorCode::SingularSeparation: return "SingularSeparation";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Exit code used by the CLI for a given failure (0 = success, 2 = bad config).
inline int error_exit_code(ErrorCode c) {
  if (c == ErrorCode::ConfigError) return 2;
  return 10 + static_cast<int>(c);
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

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace choreo
