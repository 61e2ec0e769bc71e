#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nondeg/gf.hpp"

namespace nondeg {

// Dense univariate polynomial over a finite field; coefficient i multiplies x^i.
// The coefficient vector never has a trailing zero, so the zero polynomial is
// the empty vector and has degree kDegreeOfZero.
class UniPoly {
 public:
  static constexpr int kDegreeOfZero = -1;

  explicit UniPoly(FieldPtr field) : field_(std::move(field)) {}
  UniPoly(FieldPtr field, std::vector<Elem> coeffs);

  static UniPoly constant(FieldPtr field, Elem c);
  static UniPoly monomial(FieldPtr field, Elem c, int degree);
  static UniPoly x(FieldPtr field) { return monomial(std::move(field), 1, 1); }

  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  Elem coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0; }
  Elem lc() const { return c_.empty() ? 0 : c_.back(); }

  Elem eval(Elem x) const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator-() const;
  UniPoly scaled(Elem c) const;
  // Multiplication by x^n.
  UniPoly shifted_up(int n) const;
  // u(x - a).
  UniPoly taylor_shift(Elem a) const;
  // x^frame * u(1/x); requires frame >= degree.
  UniPoly reversed(int frame) const;

  bool operator==(const UniPoly& o) const { return field_ == o.field_ && c_ == o.c_; }

  std::string to_string(char var = 'x') const;

 private:
  void normalize();

  FieldPtr field_;
  std::vector<Elem> c_;
};

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly operator%(const UniPoly& a, const UniPoly& b);
UniPoly operator/(const UniPoly& a, const UniPoly& b);

UniPoly derivative(const UniPoly& u);
UniPoly monic(const UniPoly& u);
// Monic gcd; gcd(u, 0) = monic(u). Throws BothZero.
UniPoly gcd(const UniPoly& u, const UniPoly& v);
UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& m);
UniPoly powmod(const UniPoly& base, std::uint64_t e, const UniPoly& m);
// base^(p^r) mod m by r successive Frobenius steps.
UniPoly frobenius_powmod(const UniPoly& base, std::uint64_t r, const UniPoly& m);

// Coefficient-wise p-th root of a polynomial whose derivative vanishes.
UniPoly pth_root(const UniPoly& u);

// True iff u has no repeated root over the algebraic closure. Throws ZeroPolynomial.
bool is_squarefree(const UniPoly& u);

struct Factor {
  UniPoly poly;  // monic irreducible
  int multiplicity;
};

// Squarefree factors f_i (monic) with u = lc * prod f_i^i; entries with f_i = 1 omitted.
std::vector<Factor> squarefree_decomposition(const UniPoly& u);
// Splits a monic squarefree u into products of irreducibles of equal degree.
std::vector<std::pair<UniPoly, int>> distinct_degree_factorization(const UniPoly& u);
// Splits a monic squarefree product of irreducibles of degree d.
std::vector<UniPoly> equal_degree_factorization(const UniPoly& u, int d, std::mt19937_64& rng);
// Full factorization, factors sorted by (degree, coefficients). Throws ConstantPolynomial.
// The randomized splitting step is seeded from the canonical encoding of u.
std::vector<Factor> factorize(const UniPoly& u);

// Distinct roots lying in the coefficient field, ascending.
std::vector<Elem> roots(const UniPoly& u);
// Number of distinct roots in F_{q^m} where q is the coefficient field size;
// the zero polynomial counts every element.
std::uint64_t count_roots(const UniPoly& u, std::uint64_t m = 1);

// Image of u under the embedding of its coefficient field into target.
UniPoly embed(const UniPoly& u, const FieldPtr& target);

// FNV-1a over (p, k, coefficients): the canonical byte encoding used for seeds.
std::uint64_t canonical_hash(const UniPoly& u);

}  // namespace nondeg
