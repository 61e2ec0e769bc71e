#pragma once

#include <string_view>

#include "nondeg/laurent.hpp"

namespace nondeg {

// Parses an expression in x, y and the field generator w:
//   integers, w, x, y, + - * ^ and parentheses; juxtaposition multiplies.
// Exponents are integers; negative exponents are accepted on x and y only.
// "lhs = rhs" is read as lhs - rhs.
// Throws SyntaxError (with position), GeneratorInPrimeField, NonIntegerExponent.
LaurentPoly parse_poly(std::string_view text, const FieldPtr& field);

}  // namespace nondeg
