#pragma once

#include <array>
#include <string>
#include <vector>

#include "nondeg/laurent.hpp"

namespace nondeg {

// Homogeneous polynomial of fixed degree in X, Y, Z. Coefficients are indexed
// by the monomials X^a Y^b Z^c (a + b + c = degree) in ascending lexicographic
// order of (a, b, c): Z^d, Y Z^(d-1), ..., Y^d, X Z^(d-1), ..., X^d.
class TernaryForm {
 public:
  TernaryForm(FieldPtr field, int degree);
  TernaryForm(FieldPtr field, int degree, std::vector<Elem> coeffs);

  static const std::vector<std::array<int, 3>>& monomials(int degree);
  static int index(int a, int b, int c);

  const FieldPtr& field() const noexcept { return field_; }
  int degree() const noexcept { return degree_; }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }
  Elem coeff(int a, int b, int c) const { return c_[index(a, b, c)]; }
  void set_coeff(int a, int b, int c, Elem v) { c_[index(a, b, c)] = v; }
  bool is_zero() const;

  Elem eval(Elem x, Elem y, Elem z) const;
  TernaryForm operator+(const TernaryForm& o) const;
  TernaryForm operator*(const TernaryForm& o) const;
  TernaryForm scaled(Elem c) const;
  // Divide by the first nonzero coefficient (zero form unchanged).
  TernaryForm normalized() const;

  bool operator==(const TernaryForm& o) const {
    return field_ == o.field_ && degree_ == o.degree_ && c_ == o.c_;
  }

 private:
  FieldPtr field_;
  int degree_;
  std::vector<Elem> c_;
};

// Plane quartics are degree-4 forms with 15 coefficients.
using TernaryQuartic = TernaryForm;

enum class Chart { X, Y, Z };

// d/dX (var 0), d/dY (var 1), d/dZ (var 2).
TernaryForm partial(const TernaryForm& f, int var);

// f(x, y) with support in conv{(0,0),(4,0),(0,4)} -> sum c_ij X^i Y^j Z^(4-i-j).
TernaryQuartic homogenize(const LaurentPoly& f);
// Degree-d variant of homogenize.
TernaryForm homogenize(const LaurentPoly& f, int degree);
// Chart Z: (X,Y,Z) = (x,y,1). Chart X: (1,x,y). Chart Y: (x,1,y).
LaurentPoly dehomogenize(const TernaryForm& f, Chart chart);

using Mat3 = std::array<std::array<Elem, 3>, 3>;

Mat3 mat3_identity();
Mat3 mat3_mul(const Field& f, const Mat3& a, const Mat3& b);
Elem mat3_det(const Field& f, const Mat3& a);
// Throws SingularMatrix.
Mat3 mat3_inverse(const Field& f, const Mat3& a);

// The form v -> F(M v). apply_pgl3(apply_pgl3(F, M), N) == apply_pgl3(F, M N).
TernaryForm apply_pgl3(const TernaryForm& f, const Mat3& m);

// 15 comma-separated coefficients in monomial order.
std::string to_string(const TernaryForm& f);

}  // namespace nondeg
