#include "sigma/error.hpp"

namespace sigma {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Overlap: return "OverlapError";
    case ErrorCode::Coverage: return "CoverageError";
    case ErrorCode::GroundMismatch: return "GroundMismatchError";
    case ErrorCode::NotARefinement: return "NotARefinementError";
    case ErrorCode::OracleBoundExceeded: return "OracleBoundExceeded";
    case ErrorCode::WeightSum: return "WeightSumError";
    case ErrorCode::NegativeWeight: return "NegativeWeightError";
    case ErrorCode::Shape: return "ShapeError";
    case ErrorCode::InvalidGroup: return "InvalidGroupError";
    case ErrorCode::CommutativityViolation: return "CommutativityViolation";
    case ErrorCode::EmptyDomain: return "EmptyDomainError";
    case ErrorCode::SourceMismatch: return "SourceMismatchError";
    case ErrorCode::NotApplicable: return "NotApplicableError";
    case ErrorCode::EmptyBranchSet: return "EmptyBranchSet";
    case ErrorCode::IncompatibleInput: return "IncompatibleInput";
    case ErrorCode::LabelConflict: return "LabelConflictError";
    case ErrorCode::Cyclicity: return "CyclicityError";
    case ErrorCode::Policy: return "PolicyError";
    case ErrorCode::Parse: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace sigma
