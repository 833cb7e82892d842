#include "cdalg/errors.hpp"

namespace cdalg {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::ZeroHasNoValuation: return "ZeroHasNoValuation";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::ZeroGamma: return "ZeroGamma";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::NotUnitLeading: return "NotUnitLeading";
    case ErrorCode::ZeroScalar: return "ZeroScalar";
    case ErrorCode::ScalarAlgebra: return "ScalarAlgebra";
    case ErrorCode::WrongField: return "WrongField";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::NonMonomialCoefficient: return "NonMonomialCoefficient";
    case ErrorCode::ProductNotZero: return "ProductNotZero";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IOError: return "IOError";
  }
  return "Unknown";
}

}  // namespace cdalg
