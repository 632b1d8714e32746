#include "recouple/error.hpp"

namespace recouple {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::LevelAbsent: return "LevelAbsent";
    case ErrorCode::AllLeavesContracted: return "AllLeavesContracted";
    case ErrorCode::NullOperand: return "NullOperand";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotAttached: return "NotAttached";
    case ErrorCode::NotSplit: return "NotSplit";
    case ErrorCode::GroundMismatch: return "GroundMismatch";
    case ErrorCode::AllGhostSide: return "AllGhostSide";
    case ErrorCode::AllGhost: return "AllGhost";
    case ErrorCode::NodulesOverlap: return "NodulesOverlap";
    case ErrorCode::PositionOutOfRange: return "PositionOutOfRange";
    case ErrorCode::StrandMismatch: return "StrandMismatch";
    case ErrorCode::SourceTargetMismatch: return "SourceTargetMismatch";
    case ErrorCode::NoUnit: return "NoUnit";
    case ErrorCode::NoBraiding: return "NoBraiding";
    case ErrorCode::IllegalMove: return "IllegalMove";
    case ErrorCode::ModeViolation: return "ModeViolation";
    case ErrorCode::NotPrimitiveInterchange: return "NotPrimitiveInterchange";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::NaturalityViolation: return "NaturalityViolation";
    case ErrorCode::PathExplosion: return "PathExplosion";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::CapExceeded: return "CapExceeded";
  }
  return "Unknown";
}

}  // namespace recouple
