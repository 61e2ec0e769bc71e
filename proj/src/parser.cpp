#include "nondeg/parser.hpp"

#include <cctype>
#include <string>

namespace nondeg {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const FieldPtr& field) : s_(text), field_(field) {}

  LaurentPoly parse() {
    LaurentPoly lhs = expr();
    skip_space();
    if (peek() == '=') {
      ++pos_;
      LaurentPoly rhs = expr();
      lhs = lhs - rhs;
    }
    skip_space();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return lhs;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError, what + " at position " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool starts_factor() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'w' || c == 'x' || c == 'y' || c == '(';
  }

  LaurentPoly expr() {
    LaurentPoly acc(field_);
    bool first = true;
    for (;;) {
      const char c = peek();
      bool negate = false;
      if (c == '+' || c == '-') {
        negate = c == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      LaurentPoly t = term();
      acc = negate ? acc - t : acc + t;
      first = false;
    }
    return acc;
  }

  LaurentPoly term() {
    LaurentPoly acc = power();
    for (;;) {
      if (peek() == '*') {
        ++pos_;
        acc = acc * power();
      } else if (starts_factor()) {
        acc = acc * power();
      } else {
        break;
      }
    }
    return acc;
  }

  LaurentPoly power() {
    const char c = peek();
    const bool variable = c == 'x' || c == 'y';
    LaurentPoly base = atom();
    if (peek() != '^') return base;
    ++pos_;
    skip_space();
    bool negative = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      negative = s_[pos_] == '-';
      ++pos_;
    }
    skip_space();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      throw Error(ErrorCode::NonIntegerExponent, "exponent must be an integer at position " + std::to_string(pos_));
    }
    unsigned long long e = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      e = e * 10 + static_cast<unsigned>(s_[pos_] - '0');
      if (e > 1000000) fail("exponent too large");
      ++pos_;
    }
    if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == '/')) {
      throw Error(ErrorCode::NonIntegerExponent, "exponent must be an integer at position " + std::to_string(pos_));
    }
    if (!negative) return base.pow(static_cast<unsigned>(e));
    if (!variable) fail("negative exponents are only allowed on x and y");
    const Term t = base.terms().front();
    return LaurentPoly::monomial(field_, 1, -t.e.i * static_cast<long long>(e), -t.e.j * static_cast<long long>(e));
  }

  LaurentPoly atom() {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = (v * 10 + (s_[pos_] - '0')) % static_cast<long long>(field_->p());
        ++pos_;
      }
      return LaurentPoly::constant(field_, field_->from_int(v));
    }
    if (c == 'w') {
      if (field_->is_prime()) {
        throw Error(ErrorCode::GeneratorInPrimeField, "w used over a prime field at position " + std::to_string(pos_));
      }
      ++pos_;
      return LaurentPoly::constant(field_, field_->generator());
    }
    if (c == 'x' || c == 'y') {
      ++pos_;
      return LaurentPoly::monomial(field_, 1, c == 'x', c == 'y');
    }
    if (c == '(') {
      ++pos_;
      LaurentPoly inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const FieldPtr& field_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_poly(std::string_view text, const FieldPtr& field) { return Parser(text, field).parse(); }

}  // namespace nondeg
