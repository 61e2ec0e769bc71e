#include "nondeg/error.hpp"

namespace nondeg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::MixedFields: return "MixedFields";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotASubfield: return "NotASubfield";
    case ErrorCode::BothZero: return "BothZero";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::ConstantPolynomial: return "ConstantPolynomial";
    case ErrorCode::MonomialInput: return "MonomialInput";
    case ErrorCode::NegativeExponentShift: return "NegativeExponentShift";
    case ErrorCode::NonUnimodularMatrix: return "NonUnimodularMatrix";
    case ErrorCode::SupportOutsideTriangle: return "SupportOutsideTriangle";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::FaceNotOfThisPolytope: return "FaceNotOfThisPolytope";
    case ErrorCode::NotAnEdge: return "NotAnEdge";
    case ErrorCode::NotTwoDimensional: return "NotTwoDimensional";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
    case ErrorCode::WrongInteriorCount: return "WrongInteriorCount";
    case ErrorCode::CollinearInteriorPoints: return "CollinearInteriorPoints";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::RIsZero: return "RIsZero";
    case ErrorCode::NoSubstitutionFound: return "NoSubstitutionFound";
    case ErrorCode::NotSmooth: return "NotSmooth";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::InconsistentCounts: return "InconsistentCounts";
    case ErrorCode::FieldTooLargeForOrbitSearch: return "FieldTooLargeForOrbitSearch";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::CheckpointCorrupt: return "CheckpointCorrupt";
    case ErrorCode::SpecMismatchOnResume: return "SpecMismatchOnResume";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::GeneratorInPrimeField: return "GeneratorInPrimeField";
    case ErrorCode::NonIntegerExponent: return "NonIntegerExponent";
    case ErrorCode::ZeroForm: return "ZeroForm";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace nondeg
