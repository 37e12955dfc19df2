#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dcs {

enum class ErrorCode {
  InvalidArgument,
  BadIndex,
  DegenerateFace,
  NonManifoldEdge,
  Disconnected,
  MissingWeight,
  CornerNotInFace,
  NonpositiveKappa,
  NonpositiveRadicand,
  ArgumentNotAboveOne,
  DegenerateTriangle,
  DomainError,
  NoRealThreshold,
  ExtendedNotDifferentiable,
  PathLeavesAdmissible,
  BadTarget,
  DegenerateStart,
  LineSearchStall,
  NotConverged,
  EvaluationFailed,
  NotSymmetric,
  ParseError,
  IoError,
};

std::string_view error_code_name(ErrorCode code);

// Every library failure is reported through this type; `code()` identifies the
// failure class, `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dcs
