#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nondeg {

// Every domain failure raised by the library carries one of these codes.
enum class ErrorCode {
  NonPrimeCharacteristic,
  DegreeTooLarge,
  MixedFields,
  DivisionByZero,
  NotASubfield,
  BothZero,
  ZeroPolynomial,
  ConstantPolynomial,
  MonomialInput,
  NegativeExponentShift,
  NonUnimodularMatrix,
  SupportOutsideTriangle,
  SingularMatrix,
  FaceNotOfThisPolytope,
  NotAnEdge,
  NotTwoDimensional,
  RetriesExhausted,
  WrongInteriorCount,
  CollinearInteriorPoints,
  FieldTooSmall,
  RIsZero,
  NoSubstitutionFound,
  NotSmooth,
  NotFound,
  InconsistentCounts,
  FieldTooLargeForOrbitSearch,
  InvalidSpec,
  CheckpointCorrupt,
  SpecMismatchOnResume,
  SyntaxError,
  GeneratorInPrimeField,
  NonIntegerExponent,
  ZeroForm,
  SearchSpaceTooLarge,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nondeg
