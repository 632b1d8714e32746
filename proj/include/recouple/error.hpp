#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace recouple {

enum class ErrorCode {
  NotAPermutation,
  TooShort,
  LevelAbsent,
  AllLeavesContracted,
  NullOperand,
  LengthMismatch,
  NotAttached,
  NotSplit,
  GroundMismatch,
  AllGhostSide,
  AllGhost,
  NodulesOverlap,
  PositionOutOfRange,
  StrandMismatch,
  SourceTargetMismatch,
  NoUnit,
  NoBraiding,
  IllegalMove,
  ModeViolation,
  NotPrimitiveInterchange,
  EndpointMismatch,
  NaturalityViolation,
  PathExplosion,
  NotComposable,
  ParseError,
  SingularMatrix,
  CapExceeded,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace recouple
