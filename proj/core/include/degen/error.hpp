#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace degen {

enum class ErrorCode {
  NotPrime,
  SizeLimitExceeded,
  NotASubfield,
  ZeroElement,
  ZeroPolynomial,
  FieldMismatch,
  SyntaxError,
  InvalidLattice,
  FrobeniusOrderExceeded,
  NotPrincipal,
  EnumerationLimitExceeded,
  InvalidGraph,
  Disconnected,
  InvalidMatrix,
  NotSupported,
  MissingNodeCoordinates,
  NoRationalBasePoint,
  DivisorMeetsNode,
  NotDivRDivisor,
  DegreeMismatch,
  GeometricObstruction,
  UnsupportedTorus,
  ValueOutsideMu,
  IncompleteNuData,
  CharDividesTwoD,
  NotSeparableReduction,
  CommonFactorGH,
  DegreeTooLarge,
  EpsVanishesAtNode,
  CharTooSmall,
  InvalidInput,
  NonzeroMultidegree,
  TooLarge,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure; position is a 0-based byte offset into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message);

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace degen
