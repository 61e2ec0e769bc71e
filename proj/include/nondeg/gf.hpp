#pragma once

// Exact arithmetic in small finite fields F_{p^k}.
//
// An element is packed into one machine word as the integer sum c_i p^i of its
// coefficients in the basis 1, w, ..., w^{k-1}, where w is the class of x
// modulo the field's defining polynomial. Enumeration order is the numeric
// order of this packing, so the constant coefficient varies fastest.
//
// The defining polynomial is the lexicographically smallest monic irreducible
// of degree k (coefficients compared from the constant term upward). These are
// not Conway polynomials, so element encodings are not interchangeable with
// other systems; subfield compatibility comes from the explicit Embedding.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nondeg/error.hpp"

namespace nondeg {

using Elem = std::uint64_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  // Use make_field(); the constructor is public only for std::make_shared.
  struct Token {};
  Field(Token, std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t k() const noexcept { return k_; }
  std::uint64_t q() const noexcept { return q_; }
  bool is_prime() const noexcept { return k_ == 1; }

  // Monic defining polynomial, constant coefficient first (k + 1 entries).
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  // The class of x modulo the defining polynomial ("w" in printed output).
  Elem generator() const;

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (k_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    return add_digits(a, b);
  }
  Elem neg(Elem a) const {
    if (p_ == 2 || a == 0) return a;
    if (k_ == 1) return p_ - a;
    if (!neg_table_.empty()) return neg_table_[a];
    return neg_digits(a);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (k_ == 1) return (a * b) % p_;
    if (!log_.empty()) return exp_[log_[a] + log_[b]];
    return mul_reference(a, b);
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t n) const;
  // a^p
  Elem frobenius(Elem a) const { return pow(a, p_); }
  // The unique b with b^p = a.
  Elem pth_root(Elem a) const;
  // Image of an integer in the prime subfield.
  Elem from_int(long long v) const;

  // Schoolbook polynomial multiplication modulo the defining polynomial; the
  // lookup tables are validated against this.
  Elem mul_reference(Elem a, Elem b) const;
  bool has_tables() const noexcept { return !log_.empty(); }

  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(std::span<const std::uint32_t> d) const;

  // Integer 0..p-1 for prime fields, a polynomial in w otherwise ("w^2+2*w+1").
  std::string format(Elem a) const;
  // True when format(a) needs parentheses as a factor of a product.
  bool format_is_compound(Elem a) const;

 private:
  Elem add_digits(Elem a, Elem b) const;
  Elem neg_digits(Elem a) const;
  void build_tables();

  std::uint32_t p_;
  std::uint32_t k_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;  // doubled length, so exp_[log a + log b] needs no reduction
  std::vector<std::uint16_t> add_table_;
  std::vector<std::uint16_t> neg_table_;
};

// Returns the shared field for (p, k); repeated calls return the same object.
FieldPtr make_field(std::uint32_t p, std::uint32_t k);

// Test helpers used by make_field; exposed for independent checks.
bool is_prime_number(std::uint64_t n);
bool is_irreducible_mod_p(std::span<const std::uint32_t> monic, std::uint32_t p);

class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem rep) : field_(std::move(field)), rep_(rep) {}

  const FieldPtr& field() const noexcept { return field_; }
  Elem rep() const noexcept { return rep_; }
  bool is_zero() const noexcept { return rep_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const { return {field_, field_->neg(rep_)}; }
  FieldElement inv() const { return {field_, field_->inv(rep_)}; }
  FieldElement pow(std::uint64_t n) const { return {field_, field_->pow(rep_, n)}; }
  FieldElement frobenius() const { return {field_, field_->frobenius(rep_)}; }

  bool operator==(const FieldElement& o) const { return field_ == o.field_ && rep_ == o.rep_; }

  std::string to_string() const { return field_->format(rep_); }

 private:
  void check_same(const FieldElement& o) const;

  FieldPtr field_;
  Elem rep_;
};

// All q elements in enumeration order.
std::vector<FieldElement> enumerate(const FieldPtr& field);

// Ring embedding F_{p^k} -> F_{p^K} (k | K). The generator w of the source is
// sent to the smallest root, in the target's enumeration order, of the
// source's defining polynomial among those compatible with the embeddings of
// all intermediate subfields, so embeddings commute along divisibility chains.
class Embedding {
 public:
  Embedding(FieldPtr source, FieldPtr target);

  const FieldPtr& source() const noexcept { return source_; }
  const FieldPtr& target() const noexcept { return target_; }
  Elem image_of_generator() const noexcept { return theta_; }

  Elem operator()(Elem a) const;

 private:
  bool compatible(Elem theta) const;

  FieldPtr source_;
  FieldPtr target_;
  Elem theta_ = 0;
  std::vector<Elem> powers_;
  std::vector<Elem> table_;
};

// Cached embedding between two fields.
std::shared_ptr<const Embedding> embedding(const FieldPtr& source, const FieldPtr& target);

FieldElement embed(const FieldElement& e, const FieldPtr& target);

}  // namespace nondeg
