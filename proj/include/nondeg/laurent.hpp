#pragma once

#include <string>
#include <vector>

#include "nondeg/gf.hpp"
#include "nondeg/lattice.hpp"
#include "nondeg/unipoly.hpp"

namespace nondeg {

struct Term {
  LatticePoint e;  // exponent of x, exponent of y
  Elem c;          // nonzero
};

// Finitely supported map Z^2 -> F_q \ {0}; terms are kept sorted by exponent.
class LaurentPoly {
 public:
  explicit LaurentPoly(FieldPtr field) : field_(std::move(field)) {}
  // Combines repeated exponents and drops zero coefficients.
  LaurentPoly(FieldPtr field, std::vector<Term> terms);

  static LaurentPoly monomial(FieldPtr field, Elem c, long long i, long long j);
  static LaurentPoly constant(FieldPtr field, Elem c) { return monomial(std::move(field), c, 0, 0); }

  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  Elem coeff(long long i, long long j) const;
  std::vector<LatticePoint> support() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly scaled(Elem c) const;
  LaurentPoly pow(unsigned n) const;
  // Multiplication by x^di y^dj.
  LaurentPoly shifted(long long di, long long dj) const;

  // Evaluation at a point of the coefficient field; negative exponents need nonzero coordinates.
  Elem eval(Elem x, Elem y) const;

  LatticePoint min_exponents() const;
  LatticePoint max_exponents() const;
  // Translate so the smallest x- and y-exponents are both 0.
  LaurentPoly shifted_to_origin() const;

  bool operator==(const LaurentPoly& o) const;

 private:
  FieldPtr field_;
  std::vector<Term> terms_;
};

LaurentPoly partial_x(const LaurentPoly& f);
LaurentPoly partial_y(const LaurentPoly& f);
// x df/dx and y df/dy: each coefficient c_ij is multiplied by i resp. j (mod p).
LaurentPoly euler_x(const LaurentPoly& f);
LaurentPoly euler_y(const LaurentPoly& f);

// f(x - a, y); needs nonnegative x-exponents.
LaurentPoly shift_x(const LaurentPoly& f, Elem a);
// f(x, y + t(x)); needs nonnegative y-exponents.
LaurentPoly shift_y_by_poly(const LaurentPoly& f, const UniPoly& t);
// Exponent map e -> M e + translation. Evaluating the result at P equals
// P^translation * f(x^M11 y^M21, x^M12 y^M22).
LaurentPoly monomial_map(const LaurentPoly& f, const AffineLatticeMap& map);
LaurentPoly scale(const LaurentPoly& f, Elem c);

LaurentPoly embed(const LaurentPoly& f, const FieldPtr& target);

// Restricted to terms with j == row, as a polynomial in x (needs i >= 0).
UniPoly row_polynomial(const LaurentPoly& f, long long row);

// Canonical text: terms sorted by (i, j), "c*x^i*y^j" joined by '+'.
std::string to_string(const LaurentPoly& f);
std::uint64_t canonical_hash(const LaurentPoly& f);

}  // namespace nondeg
