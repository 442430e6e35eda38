#include "ouspec/error.hpp"

namespace ouspec {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTooFewVertices: return "TooFewVertices";
    case ErrorCode::kNotStrictlyConvex: return "NotStrictlyConvex";
    case ErrorCode::kDuplicateVertex: return "DuplicateVertex";
    case ErrorCode::kInvalidT: return "InvalidT";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kGridTooCoarse: return "GridTooCoarse";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kInnerSolveBreakdown: return "InnerSolveBreakdown";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kMarginTooSmall: return "MarginTooSmall";
    case ErrorCode::kNoEligibleSamples: return "NoEligibleSamples";
    case ErrorCode::kNotNested: return "NotNested";
    case ErrorCode::kBracketNotFound: return "BracketNotFound";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace ouspec
