#include "riemsimplex/error.hpp"

namespace riemsimplex {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonMetric: return "NonMetric";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::PerturbationTooLarge: return "PerturbationTooLarge";
    case ErrorCode::DegenerateSource: return "DegenerateSource";
    case ErrorCode::BeyondInjectivityRadius: return "BeyondInjectivityRadius";
    case ErrorCode::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorCode::TriangleTooLarge: return "TriangleTooLarge";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::BallTooLarge: return "BallTooLarge";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::UnrealizableSimplex: return "UnrealizableSimplex";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace riemsimplex
