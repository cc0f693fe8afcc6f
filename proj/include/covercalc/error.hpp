#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace covercalc {

enum class ErrorCode {
  ZeroIdeal,
  UnitIdeal,
  UnsupportedLiteral,
  UnknownIdeal,
  NotApplicable,
  NotEnumerable,
  DimensionTooSmall,
  HasDivisiblePart,
  NotCoverable,
  InfiniteResidue,
  TrivialGroup,
  NotMaterializable,
  EmptyDescriptor,
  TooLarge,
  UnsupportedRing,
  ShapeMismatch,
  SyntaxError,
  SemanticError,
  InvalidArgument,
  Overflow,
};

inline constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroIdeal: return "ZeroIdeal";
    case ErrorCode::UnitIdeal: return "UnitIdeal";
    case ErrorCode::UnsupportedLiteral: return "UnsupportedLiteral";
    case ErrorCode::UnknownIdeal: return "UnknownIdeal";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::NotEnumerable: return "NotEnumerable";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::HasDivisiblePart: return "HasDivisiblePart";
    case ErrorCode::NotCoverable: return "NotCoverable";
    case ErrorCode::InfiniteResidue: return "InfiniteResidue";
    case ErrorCode::TrivialGroup: return "TrivialGroup";
    case ErrorCode::NotMaterializable: return "NotMaterializable";
    case ErrorCode::EmptyDescriptor: return "EmptyDescriptor";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::UnsupportedRing: return "UnsupportedRing";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SemanticError: return "SemanticError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class CoverError : public std::runtime_error {
 public:
  CoverError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with the byte offset into the input text.
class SyntaxError : public CoverError {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : CoverError(ErrorCode::SyntaxError, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw CoverError(code, what); }

}  // namespace covercalc
