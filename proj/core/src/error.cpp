#include "degen/error.hpp"

namespace degen {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::NotASubfield: return "NotASubfield";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::InvalidLattice: return "InvalidLattice";
    case ErrorCode::FrobeniusOrderExceeded: return "FrobeniusOrderExceeded";
    case ErrorCode::NotPrincipal: return "NotPrincipal";
    case ErrorCode::EnumerationLimitExceeded: return "EnumerationLimitExceeded";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::NotSupported: return "NotSupported";
    case ErrorCode::MissingNodeCoordinates: return "MissingNodeCoordinates";
    case ErrorCode::NoRationalBasePoint: return "NoRationalBasePoint";
    case ErrorCode::DivisorMeetsNode: return "DivisorMeetsNode";
    case ErrorCode::NotDivRDivisor: return "NotDivRDivisor";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::GeometricObstruction: return "GeometricObstruction";
    case ErrorCode::UnsupportedTorus: return "UnsupportedTorus";
    case ErrorCode::ValueOutsideMu: return "ValueOutsideMu";
    case ErrorCode::IncompleteNuData: return "IncompleteNuData";
    case ErrorCode::CharDividesTwoD: return "CharDividesTwoD";
    case ErrorCode::NotSeparableReduction: return "NotSeparableReduction";
    case ErrorCode::CommonFactorGH: return "CommonFactorGH";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::EpsVanishesAtNode: return "EpsVanishesAtNode";
    case ErrorCode::CharTooSmall: return "CharTooSmall";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NonzeroMultidegree: return "NonzeroMultidegree";
    case ErrorCode::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

SyntaxError::SyntaxError(std::size_t position, const std::string& message)
    : Error(ErrorCode::SyntaxError, message + " at position " + std::to_string(position)),
      position_(position) {}

}  // namespace degen
