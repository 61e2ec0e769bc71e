#pragma once

#include <vector>

#include "nondeg/laurent.hpp"
#include "nondeg/unipoly.hpp"

namespace nondeg {

// Polynomial in y over F_q[x]: coefficient j multiplies y^j. Never has a
// trailing zero coefficient.
class BiPoly {
 public:
  explicit BiPoly(FieldPtr field) : field_(std::move(field)) {}
  BiPoly(FieldPtr field, std::vector<UniPoly> coeffs);
  // Requires nonnegative exponents.
  static BiPoly from_laurent(const LaurentPoly& f);

  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<UniPoly>& coeffs() const noexcept { return c_; }
  int degree_y() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const UniPoly& lc() const { return c_.back(); }
  UniPoly coeff(int j) const;

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly scaled(const UniPoly& c) const;
  // Exact division of every coefficient by c.
  BiPoly divided(const UniPoly& c) const;
  // Specialize x = x0, where x0 lies in target (an extension of the coefficient field).
  UniPoly specialize_x(Elem x0, const FieldPtr& target) const;
  LaurentPoly to_laurent() const;

  bool operator==(const BiPoly& o) const { return field_ == o.field_ && c_ == o.c_; }

 private:
  void normalize();

  FieldPtr field_;
  std::vector<UniPoly> c_;
};

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) a mod b.
BiPoly pseudo_remainder(const BiPoly& a, const BiPoly& b);
// gcd in F_q[x] of all y-coefficients (monic), zero for the zero polynomial.
UniPoly content(const BiPoly& f);
BiPoly primitive_part(const BiPoly& f);

// Res_y(f, g) by the subresultant polynomial remainder sequence.
UniPoly resultant_y(const BiPoly& f, const BiPoly& g);
UniPoly resultant_y(const LaurentPoly& f, const LaurentPoly& g);
// Same value from the determinant of the Sylvester matrix (fraction-free elimination).
UniPoly sylvester_resultant_y(const BiPoly& f, const BiPoly& g);
// Resultant of two univariate polynomials over a field, with formal degrees.
Elem resultant(const UniPoly& f, const UniPoly& g);

// Bivariate gcd in F_q[x, y], normalized so its leading y-coefficient's leading
// x-coefficient is 1.
BiPoly gcd(const BiPoly& f, const BiPoly& g);

}  // namespace nondeg
