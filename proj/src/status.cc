#include "fivepoint/status.h"

namespace fivepoint {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDepthSingular:
      return "DepthSingular";
    case ErrorCode::kDegenerateAffine:
      return "DegenerateAffine";
    case ErrorCode::kDegeneratePointSet:
      return "DegeneratePointSet";
    case ErrorCode::kEpipoleCoincidence:
      return "EpipoleCoincidence";
    case ErrorCode::kNoRealRoot:
      return "NoRealRoot";
    case ErrorCode::kAllCoefficientsZero:
      return "AllCoefficientsZero";
    case ErrorCode::kRankDefect:
      return "RankDefect";
    case ErrorCode::kCollinearSample:
      return "CollinearSample";
    case ErrorCode::kRotationDegenerate:
      return "RotationDegenerate";
    case ErrorCode::kDegenerateSample:
      return "DegenerateSample";
    case ErrorCode::kNoValidCandidate:
      return "NoValidCandidate";
    case ErrorCode::kNotEnoughPoints:
      return "NotEnoughPoints";
    case ErrorCode::kNoModelFound:
      return "NoModelFound";
    case ErrorCode::kRetryExhausted:
      return "RetryExhausted";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kIoError:
      return "IoError";
  }
  return "Unknown";
}

}  // namespace fivepoint
