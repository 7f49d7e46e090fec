#pragma once

#include <stdexcept>
#include <string>

namespace sigma {

// Every failure raised by the core carries one of these codes. The C API maps
// them one-to-one onto sigma_status.
enum class ErrorCode {
  InvalidArgument = 1,
  Overlap,
  Coverage,
  GroundMismatch,
  NotARefinement,
  OracleBoundExceeded,
  WeightSum,
  NegativeWeight,
  Shape,
  InvalidGroup,
  CommutativityViolation,
  EmptyDomain,
  SourceMismatch,
  NotApplicable,
  EmptyBranchSet,
  IncompatibleInput,
  LabelConflict,
  Cyclicity,
  Policy,
  Parse,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace sigma
