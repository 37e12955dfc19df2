#include "dcs/errors.hpp"

namespace dcs {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::MissingWeight: return "MissingWeight";
    case ErrorCode::CornerNotInFace: return "CornerNotInFace";
    case ErrorCode::NonpositiveKappa: return "NonpositiveKappa";
    case ErrorCode::NonpositiveRadicand: return "NonpositiveRadicand";
    case ErrorCode::ArgumentNotAboveOne: return "ArgumentNotAboveOne";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NoRealThreshold: return "NoRealThreshold";
    case ErrorCode::ExtendedNotDifferentiable: return "ExtendedNotDifferentiable";
    case ErrorCode::PathLeavesAdmissible: return "PathLeavesAdmissible";
    case ErrorCode::BadTarget: return "BadTarget";
    case ErrorCode::DegenerateStart: return "DegenerateStart";
    case ErrorCode::LineSearchStall: return "LineSearchStall";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::EvaluationFailed: return "EvaluationFailed";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace dcs
